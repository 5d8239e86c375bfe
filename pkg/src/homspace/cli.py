"""Command-line front end.

``homspace norm`` evaluates one quasi-norm of a catalog function and
``homspace verify <suite>`` runs verification checks.  Both write a JSON
report holding the resolved configuration; ``--plots DIR`` adds CSV tables.

Exit status: 0 for a finite norm or an all-pass suite, 2 for a diverging
norm, 1 for errors and failed checks.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable

import numpy as np

from . import verify as V
from .grid import GridError, TestFunction, build_grid, catalog_sample
from .spacenorm import NormResult, RegimeError, SpaceParams, TGrid, _jsonable
from .wavelet import write_rate_table

SUITES = ("homogeneity", "heat-smoothing", "embeddings", "hardy", "algebra", "gn", "riesz",
          "kterm", "noncompact", "equivalence", "delta")

inf = math.inf


def parse_function(text: str) -> TestFunction:
    """``gaussian[:a]``, ``bump[:rho]``, ``riesz:sigma``, ``mixed:sigma,kappa``,
    ``delta``, ``constant[:c]``, ``series:seed,K[,decay]`` or ``file:PATH``."""
    name, _, arg = text.partition(":")
    vals = [float(v) for v in arg.split(",")] if arg and name != "file" else []
    try:
        if name == "gaussian":
            return TestFunction.gaussian(*vals)
        if name == "bump":
            return TestFunction.bump(*vals)
        if name == "riesz":
            return TestFunction.riesz(*vals)
        if name in ("mixed", "mixed_riesz"):
            return TestFunction.mixed_riesz(*vals)
        if name == "delta":
            return TestFunction.delta()
        if name == "constant":
            return TestFunction.constant(*vals)
        if name == "series":
            seed, K, *rest = vals
            return TestFunction.wavelet_series(int(seed), int(K), *rest)
        if name == "file":
            return TestFunction.external(arg)
    except TypeError as exc:
        raise GridError(f"bad arguments for {name!r}: {arg!r}") from exc
    raise GridError(f"unknown function {text!r}")


def _float(text: str) -> float:
    return float(text)  # accepts inf and -inf


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write the JSON report here (default: stdout)")
    common.add_argument("--config", type=Path, help="JSON file of flag defaults")
    common.add_argument("--seed", type=int, default=7, help="seed for every random family (default 7)")
    common.add_argument("--plots", type=Path, help="directory for CSV plot data")

    parser = argparse.ArgumentParser(prog="homspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    pn = sub.add_parser("norm", parents=[common], help="evaluate one quasi-norm")
    pn.add_argument("--func", default="gaussian", help="catalog function, e.g. riesz:0.5 (default gaussian)")
    pn.add_argument("--n", type=int, default=1, help="dimension (default 1)")
    pn.add_argument("--N", type=int, default=None, help="points per axis (see default_grid)")
    pn.add_argument("--L", type=float, default=None, help="box half-width (see default_grid)")
    pn.add_argument("--space", choices=("B", "F"), default="B")
    pn.add_argument("--p", type=_float, default=inf)
    pn.add_argument("--q", type=_float, default=inf)
    pn.add_argument("--s", type=float, default=-0.5)
    pn.add_argument("--method", choices=V.METHODS, default="heat")
    pn.add_argument("--lmin", type=int, default=None, help="smallest heat-time exponent, t = 4^l")
    pn.add_argument("--lmax", type=int, default=None, help="largest heat-time exponent")

    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("suite", help="one of " + ", ".join(SUITES) + " or all")
    pv.add_argument("--n", type=int, default=1)
    pv.add_argument("--sigma", type=float, default=0.5)
    pv.add_argument("--kappa", type=float, default=None, help="adds the mixed kernel to the riesz suite")
    pv.add_argument("--p", type=_float, default=4.0, help="integrability for the riesz suite")
    pv.add_argument("--p0", type=_float, default=1.0)
    pv.add_argument("--p1", type=_float, default=2.0)
    pv.add_argument("--r", type=float, default=-0.5)
    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None:
        cfg = json.loads(args.config.read_text())
        # flags on the command line win over the file
        explicit = parser.parse_args(argv)
        defaults = build_parser().parse_args([args.command] + ([args.suite] if args.command == "verify" else []))
        for key, val in cfg.items():
            if getattr(explicit, key, None) == getattr(defaults, key, None):
                setattr(args, key, val)
    return args


def resolved_config(args: argparse.Namespace) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if isinstance(val, Path):
            val = str(val)
        out[key] = val
    return _jsonable(out)


def _emit(payload: dict, out: Path | None) -> None:
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


# --------------------------------------------------------------------------
# norm


def cmd_norm(args: argparse.Namespace) -> int:
    n = args.n
    tf = parse_function(args.func)
    N, L = default_grid(tf, n, args.method)
    args.N = args.N or N
    args.L = args.L or L
    spec = build_grid(n, args.N, args.L)
    f = catalog_sample(tf, spec)
    params = SpaceParams(args.space, args.p, args.q, args.s, n)
    if args.method == "heat" and (args.lmin is not None or args.lmax is not None):
        from .spacenorm import compound_norm

        base = TGrid()
        tg = TGrid(base.l_min if args.lmin is None else args.lmin, base.l_max if args.lmax is None else args.lmax)
        res = compound_norm(f, params, tg)
    else:
        res = V.norm_by_method(f, params, args.method)
    _emit({"config": resolved_config(args), "result": res.to_dict()}, args.out)
    if args.plots is not None and res.terms is not None:
        _write_terms(res, args.plots / "terms.csv")
    return 0 if res.finite else 2


def default_grid(tf: TestFunction, n: int, method: str) -> tuple[int, float]:
    """Grid used when ``--N``/``--L`` are not given.

    Dyadic blocks of a kernel without scale need many octaves, hence a long
    grid on a box of half-width ``pi 2^a``.
    """
    if method == "lpaley" and tf.kind in ("riesz", "mixed_riesz"):
        return (1 << 16, math.pi * 256.0) if n == 1 else (1024, math.pi * 16.0)
    return (1024, 32.0) if n == 1 else (256, 16.0)


def _write_terms(res: NormResult, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    var = "j" if res.truncation.get("j_min") is not None else "l"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([var, "term"])
        for i, v in zip(res.index, res.terms):
            w.writerow([int(i), repr(float(v))])


# --------------------------------------------------------------------------
# verify


def _grid_family(n: int, N: int, L: float, tfs) -> list:
    spec = build_grid(n, N, L)
    return [catalog_sample(tf, spec) for tf in tfs]


def _gauss_bumps(n: int = 1, N: int = 1024, L: float = 32.0):
    tfs = [TestFunction.gaussian(a) for a in (0.5, 1.0, 2.0)] + [TestFunction.bump(r) for r in (1.0, 2.0)]
    return _grid_family(n, N, L, tfs)


def suite_jobs(args: argparse.Namespace) -> dict[str, list[Callable[[], V.VerdictReport]]]:
    n = args.n
    seed = args.seed
    jobs: dict[str, list[Callable[[], V.VerdictReport]]] = {}

    def homogeneity():
        out = []
        for tf in (TestFunction.gaussian(), TestFunction.bump()):
            f = catalog_sample(tf, build_grid(1, 1024, 32.0 if tf.kind == "gaussian" else 8.0))
            for prm in (SpaceParams("B", inf, inf, -0.5, 1), SpaceParams("B", 2, 2, -0.25, 1),
                        SpaceParams("F", 2, 2, 0.25, 1)):
                out.append(lambda f=f, prm=prm: V.check_homogeneity(f, prm))
        return out

    jobs["homogeneity"] = homogeneity()
    jobs["heat-smoothing"] = [
        lambda: V.check_heat_smoothing(catalog_sample(TestFunction.gaussian(), build_grid(1, 1024, 32.0)),
                                       SpaceParams("B", 2, 2, -0.25, 1), 0.5),
        # self-similar input on the B, q = inf line: R(t) is flat
        lambda: V.check_heat_smoothing(catalog_sample(TestFunction.riesz(0.75), build_grid(1, 1 << 17, math.pi * 512)),
                                       SpaceParams("B", 2, inf, -0.25, 1), 0.5, spread_tol=1.03, method="lpaley")]

    def embeddings():
        fam = lambda: V.smooth_catalog(build_grid(1, 2048, 32.0))
        chain = [SpaceParams("B", inf, 1, -0.5, 1), SpaceParams("B", inf, 2, -0.5, 1),
                 SpaceParams("F", inf, 2, -0.5, 1), SpaceParams("F", inf, inf, -0.5, 1),
                 SpaceParams("B", inf, inf, -0.5, 1)]
        out = [lambda a=a, b=b: V.check_embedding(fam(), a, b, "i") for a, b in zip(chain, chain[1:])]
        out.append(lambda: V.check_embedding(fam(), SpaceParams("B", 2, inf, 0.0, 1),
                                             SpaceParams("F", inf, 2, -0.5, 1), "ii"))
        out.append(lambda: V.check_embedding(fam(), SpaceParams("B", 1, 1, 0.5, 1),
                                             SpaceParams("F", 2, 2, 0.0, 1), "iii"))
        return out

    jobs["embeddings"] = embeddings()
    jobs["hardy"] = [lambda prm=prm: V.check_hardy(_gauss_bumps(), prm)
                     for prm in (SpaceParams("F", 2, 2, 0.25, 1), SpaceParams("B", 2, 2, 0.25, 1))]

    def algebra():
        spec = build_grid(1, 1024, 8.0)
        b = catalog_sample(TestFunction.bump(), spec)
        g = catalog_sample(TestFunction.gaussian(), spec)
        prm = SpaceParams("B", 2, 1, 0.5, 1)
        return [lambda: V.check_algebra(b, b, prm), lambda: V.check_algebra(b, g, prm)]

    jobs["algebra"] = algebra()
    bumps2 = lambda: _grid_family(2, 512, 4.0, [TestFunction.bump(r) for r in (0.75, 1.0, 1.25, 1.5, 2.0)])
    jobs["gn"] = [lambda: V.check_gn(_gauss_bumps(), "two_integrability"), lambda: V.check_gn(_gauss_bumps(), "anchor"),
                  lambda: V.check_gn(bumps2(), "gradient"), lambda: V.check_gn(bumps2(), "l2_plane")]
    riesz = [lambda: V.classify_riesz(args.sigma, n=n, p=args.p)]
    if args.kappa is not None:
        riesz.append(lambda: V.classify_riesz(args.sigma, args.kappa, n=n))
    elif args.suite == "all":
        riesz.append(lambda: V.classify_riesz(0.25, 0.75, n=1))
    jobs["riesz"] = riesz
    jobs["kterm"] = [lambda: V.check_kterm(args.p0, args.p1, args.r, seed=seed)]
    jobs["noncompact"] = [lambda: V.noncompact_witness(SpaceParams("F", 1, 1, 0.5, 1),
                                                       SpaceParams("F", 2, 2, 0.0, 1), 6)]
    jobs["equivalence"] = [lambda: V.check_equivalence(
        [SpaceParams("B", inf, inf, -0.5, 1), SpaceParams("B", 2, 2, -0.25, 1),
         SpaceParams("F", 2, 1, 0.25, 1), SpaceParams("F", 4, 2, -0.25, 1)])]
    jobs["delta"] = [lambda: V.check_delta(1)]
    return jobs


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HOMSPACE_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(args: argparse.Namespace) -> list[V.VerdictReport]:
    if args.suite != "all" and args.suite not in SUITES:
        raise GridError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    jobs = suite_jobs(args)
    names = SUITES if args.suite == "all" else (args.suite,)
    todo = [job for name in names for job in jobs[name]]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(lambda job: job(), todo))
    # stable order: by check name, then by parameters
    return sorted(reports, key=lambda r: (r.check, json.dumps(_jsonable(r.params), sort_keys=True)))


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args)
    _emit({"config": resolved_config(args), "reports": [r.to_dict() for r in reports]}, args.out)
    if args.plots is not None:
        write_plots(reports, args.plots)
    return 0 if all(r.passed for r in reports) else 1


def write_plots(reports: list[V.VerdictReport], folder: Path) -> None:
    """CSV tables: k against greedy error, j against block norm, t against R(t)."""
    folder.mkdir(parents=True, exist_ok=True)
    for i, r in enumerate(reports):
        obs = r.observed
        if r.check == "kterm":
            write_rate_table(obs, folder / f"kterm_{i}.csv")
        elif r.check == "riesz" and "block_scaling" in obs:
            bs = obs["block_scaling"]
            _table(folder / f"riesz_blocks_{i}.csv", ["j", "block_norm"], zip(bs["j"], bs["norms"]))
        elif r.check == "heat_smoothing":
            _table(folder / f"heat_smoothing_{i}.csv", ["t", "R"], zip(obs["t"], obs["R"]))


def _table(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
        np.seterr(all="ignore")
        if args.command == "norm":
            return cmd_norm(args)
        return cmd_verify(args)
    except (GridError, RegimeError, V.HarnessError, ValueError, OSError) as exc:
        print(f"homspace: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
