"""Homogeneous dyadic resolution of unity and the block quasi-norms built on it.

``phi0`` is 1 on the unit ball and 0 outside radius 3/2; block ``j`` uses the
annulus symbol ``phi0(2^-j xi) - phi0(2^{1-j} xi)``, supported in
``2^{j-1} <= |xi| <= 3 2^{j-1}``.  The norms here see only frequencies away
from zero, so they vanish on constants: they are the domestic kind, not the
admissible heat norms of :mod:`homspace.spacenorm`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.fft as sfft

from .grid import GridError, GridFunction, GridSpec, decays, dyadic_symbol, plateau, spectral_transform
from .spacenorm import (NormResult, ProbeError, RegimeError, SpaceParams, _fit, _lp, _zero_pad,
                        outward_order, probe_partials)


SAMPLING = 4.0
PAD_FACTOR = 8
PAD_BUDGET = 1 << 22


@dataclass(frozen=True)
class DyadicPartition:
    """Blocks ``j_min .. j_max`` of the dyadic partition on one grid."""

    spec: GridSpec
    j_min: int
    j_max: int

    def __post_init__(self) -> None:
        if self.j_min > self.j_max:
            raise GridError(f"empty j range [{self.j_min}, {self.j_max}]")

    @property
    def js(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    def symbol(self, j: int) -> np.ndarray:
        if not self.j_min <= j <= self.j_max:
            raise GridError(f"j={j} outside [{self.j_min}, {self.j_max}]")
        return _symbol(self.spec, int(j))

    def base(self) -> np.ndarray:
        """``phi0`` on the lattice."""
        return plateau(self.spec.xi_abs, 1.0, 1.5)

    def unity_sum(self) -> np.ndarray:
        return sum(self.symbol(int(j)) for j in self.js)

    def covered(self) -> np.ndarray:
        """Lattice points where the blocks must add up to 1."""
        r = self.spec.xi_abs
        return (r >= 3.0 * 2.0 ** (self.j_min - 1)) & (r <= 2.0 ** self.j_max)

    def resolved(self, j: int) -> bool:
        """The whole annulus of block ``j`` sits below Nyquist."""
        return 3.0 * 2.0 ** (j - 1) <= self.spec.nyquist

    def well_sampled(self, j: int) -> bool:
        """The inner radius of block ``j`` is at least ``SAMPLING`` lattice steps.

        Thinner annuli hold a handful of lattice frequencies and their blocks
        are dominated by the periodization.
        """
        return 2.0 ** (j - 1) >= SAMPLING * self.spec.dxi

    def active(self) -> np.ndarray:
        """Blocks that are both well sampled and resolved."""
        return np.array([j for j in self.js if self.well_sampled(j) and self.resolved(j)], dtype=int)

    def to_dict(self) -> dict:
        return {"j_min": self.j_min, "j_max": self.j_max, "grid": self.spec.to_dict()}


@lru_cache(maxsize=256)
def _symbol(spec: GridSpec, j: int) -> np.ndarray:
    out = dyadic_symbol(spec.xi_abs, j)
    out.setflags(write=False)
    return out


def default_partition(spec: GridSpec) -> DyadicPartition:
    """``j`` from ``log2(pi/L) - (log2 N - 3)`` up to ``log2(N pi / 2L) - 2``.

    The upper end leaves room for ``|block|^4`` to be integrated without
    aliasing; the lower end reaches well below the lattice spacing so that
    every well-sampled block is included.
    """
    lo = math.ceil(math.log2(math.pi / spec.L) - (math.log2(spec.N) - 3) - 1e-9)
    hi = math.floor(math.log2(spec.N * math.pi / (2.0 * spec.L)) - 2 + 1e-9)
    return DyadicPartition(spec, lo, hi)


def dyadic_block(f: GridFunction, part: DyadicPartition, j: int) -> GridFunction:
    """Physical samples of ``(phi^j f^)^v``."""
    if f.spec != part.spec:
        raise GridError("function and partition live on different grids")
    if not part.resolved(j):
        raise GridError(f"block j={j} reaches past Nyquist {part.spec.nyquist:g}")
    sym = part.symbol(j)
    g = f.spectral()
    return spectral_transform(GridFunction(f.spec, g.values * sym, "spectral"), "inverse")


def _blocks(f: GridFunction, part: DyadicPartition, js: np.ndarray):
    spec = f.spec
    fh = f.spectral().values * spec._phase
    for j in js:
        yield sfft.ifftn(fh * part.symbol(int(j))) / spec.spectral_scale


def block_norms(f: GridFunction, part: DyadicPartition, p: float,
                js: np.ndarray | None = None) -> np.ndarray:
    """``||block_j||_p`` for each ``j`` (active blocks by default)."""
    js = part.active() if js is None else np.asarray(js, dtype=int)
    return np.array([_lp(b, f.spec.cell, p) for b in _blocks(f, part, js)])


def _prepare(f: GridFunction, part: DyadicPartition | None) -> tuple[GridFunction, DyadicPartition]:
    """Default partition, on a zero-padded box when ``f`` decays.

    Padding by ``PAD_FACTOR`` makes the low blocks, which carry most of a
    smooth function's weight when ``s < 0``, well sampled.
    """
    if part is not None:
        return f, part
    if decays(f):
        f = _zero_pad(f, PAD_BUDGET, PAD_FACTOR)
    return f, default_partition(f.spec)


def _active_or_raise(part: DyadicPartition) -> np.ndarray:
    js = part.active()
    if js.size == 0:
        raise GridError("no block is both well sampled and resolved on this grid")
    return js


def _result(terms: np.ndarray, js: np.ndarray, main: float, partials: np.ndarray,
            steps: float = 2.0) -> NormResult:
    trunc = {"l_min": None, "l_max": None, "j_min": int(js.min()), "j_max": int(js.max())}
    tails = {"first_term": float(terms[0]), "last_term": float(terms[-1])}
    if np.all(terms == 0):
        rate = {"class": "bounded", "slope": 0.0, "r2": 0.0, "exponent": None,
                "var": "j", "cutoffs": int(math.ceil(js.size / 2))}
        return NormResult("finite", 0.0, rate, 0.0, None, trunc, tails, terms, js)
    try:
        rate = probe_partials(partials, "j", steps_per_unit=steps, terms=terms)
    except ProbeError:
        # too few blocks to fit a growth law; the value stands as computed
        rate = {"class": "unprobed", "slope": None, "r2": None, "exponent": None,
                "var": "j", "cutoffs": int(math.ceil(js.size / 2))}
    rate["sides"] = one_sided_exponents(terms, js)
    if rate["class"] not in ("bounded", "unprobed"):
        return NormResult("diverging", None, rate, None, None, trunc, tails, terms, js)
    return NormResult("finite", float(main), rate, float(main), None, trunc, tails, terms, js)


def domestic_b_norm(f: GridFunction, params: SpaceParams, part: DyadicPartition | None = None) -> NormResult:
    """``(sum_j 2^{jsq} ||block_j||_p^q)^{1/q}`` over the active blocks."""
    f, part = _prepare(f, part)
    js = _active_or_raise(part)
    terms = 2.0 ** (js * params.s) * block_norms(f, part, params.p, js)
    order = outward_order(js.size, (js.size - 1) // 2)
    seq = terms[order]
    if math.isinf(params.q):
        partials = np.maximum.accumulate(seq)
        main = terms.max()
    else:
        partials = np.cumsum(seq ** params.q) ** (1.0 / params.q)
        main = partials[-1]
    return _result(terms, js, main, partials)


def domestic_f_norm(f: GridFunction, params: SpaceParams, part: DyadicPartition | None = None) -> NormResult:
    """``|| (sum_j 2^{jsq} |block_j|^q)^{1/q} ||_p`` over the active blocks."""
    if params.A != "F":
        raise RegimeError(f"expected an F-space, got {params.label}")
    if math.isinf(params.p):
        raise RegimeError("the dyadic F-norm needs p < inf")
    f, part = _prepare(f, part)
    js = _active_or_raise(part)
    spec = f.spec
    s, p, q = params.s, params.p, params.q
    layers = [2.0 ** (j * s) * np.abs(b) for j, b in zip(js, _blocks(f, part, js))]
    terms = np.array([_lp(a, spec.cell, p) for a in layers])
    acc = np.zeros(spec.shape)
    partials = np.empty(js.size)
    for k, i in enumerate(outward_order(js.size, (js.size - 1) // 2)):
        if math.isinf(q):
            acc = np.maximum(acc, layers[i])
            partials[k] = _lp(acc, spec.cell, p)
        else:
            acc += layers[i] ** q
            partials[k] = _lp(acc ** (1.0 / q), spec.cell, p)
    return _result(terms, js, partials[-1], partials)


def domestic_norm(f: GridFunction, params: SpaceParams, part: DyadicPartition | None = None) -> NormResult:
    if params.A == "B":
        return domestic_b_norm(f, params, part)
    return domestic_f_norm(f, params, part)


def one_sided_exponents(terms: np.ndarray, js: np.ndarray, frac: float = 0.5) -> dict:
    """Per-unit-``j`` slopes of ``log2 term`` on the low and high ends.

    Each side is the half of the range on that side of the middle block; the
    fit uses its outer ``frac`` (at least 3 points), where one power law
    dominates.  Zero terms are skipped.
    """
    terms = np.asarray(terms, dtype=float)
    js = np.asarray(js, dtype=float)
    mid = (js.size - 1) // 2
    out = {}
    for side, sel in (("low", slice(0, mid + 1)), ("high", slice(mid, js.size))):
        x, y = js[sel], terms[sel]
        keep = y > 0
        x, y = x[keep], y[keep]
        k = max(3, int(math.ceil(frac * x.size)))
        if x.size < 3:
            out[side] = None
            continue
        if side == "low":
            x, y = x[:k], y[:k]
        else:
            x, y = x[-k:], y[-k:]
        slope, _ = _fit(x, np.log2(y))
        out[side] = slope
    return out


def edge_exponents(terms: np.ndarray, js: np.ndarray, width: int = 3) -> dict:
    """Slopes of ``log2 term`` per unit ``j`` over the outermost ``width`` blocks."""
    terms = np.asarray(terms, dtype=float)
    js = np.asarray(js, dtype=float)
    if js.size < width or np.any(terms[:width] <= 0) or np.any(terms[-width:] <= 0):
        raise GridError("need positive terms at both ends")
    low, _ = _fit(js[:width], np.log2(terms[:width]))
    high, _ = _fit(js[-width:], np.log2(terms[-width:]))
    return {"low": low, "high": high}


def ladder_windows(N: int, js: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Split ``js`` into runs, each paired with a box half-width ``L = pi 2^a``.

    On that box every block of the run is well sampled and below the
    default ``j_max``, so each block is measured where the grid sees it
    properly.  Runs hold ``log2 N - 5`` blocks.
    """
    js = np.sort(np.asarray(js, dtype=int))
    width = int(math.log2(N)) - 5
    if width < 1:
        raise GridError(f"N={N} is too small for a block ladder")
    out = []
    for start in range(0, js.size, width):
        run = js[start:start + width]
        a = 3 - int(run[0])
        out.append((math.pi * 2.0 ** a, run))
    return out


def ladder_block_norms(tf, n: int, N: int, js, p: float) -> np.ndarray:
    """``||block_j||_p`` of a catalog function, each run of ``j`` on its own box.

    A single periodic grid resolves about ``log2 N - 5`` blocks well; a
    ladder of boxes with the same ``N`` covers any range of ``j``.
    """
    from .grid import build_grid, catalog_sample

    js = np.asarray(js, dtype=int)
    norms = {}
    for L, run in ladder_windows(N, js):
        spec = build_grid(n, N, L)
        part = default_partition(spec)
        g = catalog_sample(tf, spec)
        for j, v in zip(run, block_norms(g, part, p, run)):
            norms[int(j)] = v
    return np.array([norms[int(j)] for j in js])
