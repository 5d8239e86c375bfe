import math

import pytest
from hypothesis import HealthCheck, settings

from homspace.grid import TestFunction, build_grid, catalog_sample

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

inf = math.inf


@pytest.fixture(scope="session")
def line():
    return build_grid(1, 1024, 32.0)


@pytest.fixture(scope="session")
def short_line():
    return build_grid(1, 1024, 8.0)


@pytest.fixture(scope="session")
def gauss(line):
    return catalog_sample(TestFunction.gaussian(), line)


@pytest.fixture(scope="session")
def bump(short_line):
    return catalog_sample(TestFunction.bump(), short_line)


# acceptance criteria: number -> list of (passed, detail), printed at the end of the run
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}
_START = [0.0]


def pytest_sessionstart(session):
    import time
    _START[0] = time.perf_counter()


@pytest.fixture
def accept():
    def record(k: int, passed: bool, detail: str) -> None:
        ACCEPTANCE.setdefault(k, []).append((bool(passed), detail))
    return record


def pytest_terminal_summary(terminalreporter):
    import time
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[k]
        verdict = "PASS" if all(ok for ok, _ in rows) else "FAIL"
        tr.write_line(f"criterion {k:2d}: {verdict}  " + "; ".join(d for _, d in rows))
    tr.write_line(f"session runtime {time.perf_counter() - _START[0]:.0f} s")
