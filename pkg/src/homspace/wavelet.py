"""Periodic Daubechies tensor wavelets with the ``2^{-jr}`` normalization.

A wavelet at level ``j``, type ``G`` and position ``m`` is
``2^{-jr} prod_l psi_{G_l}(2^j x_l - m_l)``, where ``G_l`` is ``F`` (father,
scaling function) or ``M`` (mother) and at least one ``G_l`` is ``M``.  With
orthonormal filters the coefficient of ``f`` is
``2^{j(r + n/2)}`` times the L2-normalized detail coefficient, which is what
the filter bank returns once samples are weighted by ``h^{n/2}``.

Levels are absolute: on a grid with spacing ``h = 2^-b`` the finest details
sit at ``j = b - 1``.  The coarsest approximation is kept as ``tail`` so
synthesis is exact, but it takes no part in the sequence norms.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np
import pywt

from .grid import GridError, GridFunction, GridSpec, NonPowerOfTwo, TestFunction
from .spacenorm import SpaceParams

Band = tuple[int, str]  # (j, G)


def _spacing_exponent(spec: GridSpec) -> int:
    b = -math.log2(spec.h)
    k = round(b)
    if abs(b - k) > 1e-12:
        raise NonPowerOfTwo(f"wavelets need a power-of-two spacing, got h={spec.h}")
    return int(k)


def _types(n: int) -> list[str]:
    return ["".join(t) for t in itertools.product("FM", repeat=n) if "M" in t]


def _pywt_key(G: str) -> str:
    return G.replace("F", "a").replace("M", "d")


@dataclass(frozen=True)
class WaveletSystem:
    """Daubechies filter with ``order`` vanishing moments on one periodic grid."""

    spec: GridSpec
    r: float
    order: int = 6
    levels: int | None = None

    def __post_init__(self) -> None:
        n = self.spec.n
        if not (-n < self.r < 0):
            raise GridError(f"normalization exponent r must lie in (-n, 0), got {self.r}")
        if self.order < 1:
            raise GridError("wavelet order must be positive")
        _spacing_exponent(self.spec)
        if self.levels is not None and not 1 <= self.levels <= self.max_levels:
            raise GridError(f"levels must lie in [1, {self.max_levels}], got {self.levels}")

    @property
    def name(self) -> str:
        return f"db{self.order}"

    @property
    def wavelet(self) -> pywt.Wavelet:
        return pywt.Wavelet(self.name)

    @property
    def filter_length(self) -> int:
        return self.wavelet.dec_len

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def max_levels(self) -> int:
        return pywt.dwt_max_level(self.spec.N, self.filter_length)

    @property
    def depth(self) -> int:
        return self.max_levels if self.levels is None else self.levels

    @property
    def j_max(self) -> int:
        return _spacing_exponent(self.spec) - 1

    @property
    def j_min(self) -> int:
        return _spacing_exponent(self.spec) - self.depth

    @property
    def types(self) -> list[str]:
        return _types(self.n)

    def band_shape(self, j: int) -> tuple[int, ...]:
        return (self.spec.N >> (self.j_max + 1 - j),) * self.n

    def offset(self, j: int) -> int:
        """``m = k - offset`` maps array index ``k`` to the lattice position."""
        off = self.spec.L * 2.0 ** j
        if abs(off - round(off)) > 1e-9:  # pragma: no cover - excluded by the spacing check
            raise NonPowerOfTwo("box edge is not on the level-j lattice")
        return int(round(off))

    def support(self, j: int, m: int) -> tuple[float, float]:
        """Interval holding the level-``j`` wavelet at lattice position ``m`` (per axis).

        The periodized filter bank centres the wavelet at ``m 2^-j``: it spans
        ``[m - F/2 + 1, m + F/2] 2^-j`` for a filter of length ``F``.
        """
        half = self.filter_length // 2
        return ((m - half + 1) * 2.0 ** (-j), (m + half) * 2.0 ** (-j))

    def scale(self, j: int) -> float:
        """Coefficient per unit L2-normalized detail coefficient."""
        return 2.0 ** (j * (self.r + self.n / 2.0))

    def with_r(self, r: float) -> "WaveletSystem":
        return WaveletSystem(self.spec, r, self.order, self.levels)

    def to_dict(self) -> dict:
        return {"wavelet": self.name, "order": self.order, "filter_length": self.filter_length,
                "r": self.r, "j_min": self.j_min, "j_max": self.j_max, "grid": self.spec.to_dict()}


@dataclass
class WaveletExpansion:
    """Coefficients per band ``(j, G)``, indexed by array position ``k``."""

    system: WaveletSystem
    bands: dict[Band, np.ndarray]
    tail: np.ndarray = field(repr=False)

    @classmethod
    def empty(cls, system: WaveletSystem) -> "WaveletExpansion":
        bands = {(j, G): np.zeros(system.band_shape(j), dtype=complex)
                 for j in range(system.j_min, system.j_max + 1) for G in system.types}
        return cls(system, bands, np.zeros(system.band_shape(system.j_min), dtype=complex))

    def copy(self) -> "WaveletExpansion":
        return WaveletExpansion(self.system, {b: v.copy() for b, v in self.bands.items()},
                                self.tail.copy())

    def scaled(self, a: complex) -> "WaveletExpansion":
        return WaveletExpansion(self.system, {b: a * v for b, v in self.bands.items()}, a * self.tail)

    def items(self) -> Iterator[tuple[int, str, tuple[int, ...], complex]]:
        """Nonzero ``(j, G, m, coefficient)`` in lexicographic ``(j, G, m)`` order."""
        for (j, G) in sorted(self.bands):
            arr = self.bands[(j, G)]
            off = self.system.offset(j)
            for k in zip(*np.nonzero(arr)):
                yield j, G, tuple(int(i) - off for i in k), complex(arr[k])

    def get(self, j: int, G: str, m: Sequence[int]) -> complex:
        off = self.system.offset(j)
        return complex(self.bands[(j, G)][tuple((int(i) + off) % s for i, s in
                                                zip(m, self.system.band_shape(j)))])

    def set(self, j: int, G: str, m: Sequence[int], value: complex) -> None:
        if (j, G) not in self.bands:
            raise GridError(f"no band j={j}, G={G} in this system")
        off = self.system.offset(j)
        idx = tuple((int(i) + off) % s for i, s in zip(m, self.system.band_shape(j)))
        self.bands[(j, G)][idx] = value

    def nnz(self) -> int:
        return int(sum(np.count_nonzero(v) for v in self.bands.values()))

    def flat(self) -> tuple[list[Band], np.ndarray]:
        """Band list and the concatenated coefficients in band-sorted, C order."""
        keys = sorted(self.bands)
        return keys, np.concatenate([self.bands[b].ravel() for b in keys])

    def from_flat(self, values: np.ndarray, tail: np.ndarray | None = None) -> "WaveletExpansion":
        keys = sorted(self.bands)
        out, pos = {}, 0
        for b in keys:
            size = self.bands[b].size
            out[b] = values[pos:pos + size].reshape(self.bands[b].shape).copy()
            pos += size
        return WaveletExpansion(self.system, out,
                                np.zeros_like(self.tail) if tail is None else tail)

    def to_csv(self, path: str | Path) -> None:
        """Rows ``j, G, m_1..m_n, re, im`` for the nonzero coefficients."""
        n = self.system.n
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["j", "G"] + [f"m{i + 1}" for i in range(n)] + ["re", "im"])
            for j, G, m, c in self.items():
                w.writerow([j, G, *m, repr(c.real), repr(c.imag)])

    @classmethod
    def from_csv(cls, path: str | Path, system: WaveletSystem) -> "WaveletExpansion":
        exp = cls.empty(system)
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                m = [int(row[f"m{i + 1}"]) for i in range(system.n)]
                exp.set(int(row["j"]), row["G"], m, complex(float(row["re"]), float(row["im"])))
        return exp


def analyze(f: GridFunction, system: WaveletSystem) -> WaveletExpansion:
    if f.spec != system.spec:
        raise GridError("function and wavelet system live on different grids")
    spec = system.spec
    v = f.physical().values * spec.h ** (spec.n / 2.0)
    coeffs = pywt.wavedecn(v, system.name, mode="periodization", level=system.depth)
    bands = {}
    # coeffs[1] is the coarsest detail level
    for i, det in enumerate(coeffs[1:]):
        j = system.j_min + i
        for G in system.types:
            bands[(j, G)] = np.asarray(det[_pywt_key(G)], dtype=complex) * system.scale(j)
    return WaveletExpansion(system, bands, np.asarray(coeffs[0], dtype=complex))


def synthesize(exp: WaveletExpansion) -> GridFunction:
    system = exp.system
    spec = system.spec
    coeffs = [exp.tail]
    for j in range(system.j_min, system.j_max + 1):
        coeffs.append({_pywt_key(G): exp.bands[(j, G)] / system.scale(j) for G in system.types})
    v = pywt.waverecn(coeffs, system.name, mode="periodization")
    return GridFunction(spec, v / spec.h ** (spec.n / 2.0))


def unit_wavelet(system: WaveletSystem, j: int, G: str, m: Sequence[int]) -> GridFunction:
    """Samples of the wavelet with coefficient 1 at ``(j, G, m)``."""
    exp = WaveletExpansion.empty(system)
    exp.set(j, G, m, 1.0)
    return synthesize(exp)


# --------------------------------------------------------------------------
# sequence norms

Mode = Literal["b", "f", "weak_l1"]


def _check_r(exp: WaveletExpansion, params: SpaceParams) -> None:
    if not math.isclose(exp.system.r, params.order, rel_tol=1e-12, abs_tol=1e-12):
        raise GridError(f"expansion uses r={exp.system.r} but {params.label} needs r={params.order}")
    if params.n != exp.system.n:
        raise GridError("dimension mismatch between expansion and parameters")


def _sum_power(a: np.ndarray, p: float) -> float:
    if a.size == 0:
        return 0.0
    return float(a.max()) if math.isinf(p) else float(np.sum(a ** p) ** (1.0 / p))


def seq_norm(exp: WaveletExpansion, params: SpaceParams | None, mode: Mode = "b") -> float:
    """b-, f- or weak-l1 quasi-norm of the detail coefficients."""
    if mode == "weak_l1":
        _, vals = exp.flat()
        a = np.sort(np.abs(vals))[::-1]
        a = a[a > 0]
        return float(np.max(np.arange(1, a.size + 1) * a)) if a.size else 0.0
    if params is None:
        raise GridError(f"mode {mode!r} needs space parameters")
    _check_r(exp, params)
    p, q = params.p, params.q
    if mode == "b":
        inner = np.array([_sum_power(np.abs(exp.bands[b]), p) for b in sorted(exp.bands)])
        return _sum_power(inner, q)
    if mode == "f":
        if math.isinf(p):
            raise GridError("the f-type sequence norm needs p < inf")
        return _lp_of_square(exp, p, q)
    raise GridError(f"unknown sequence-norm mode {mode!r}")


def _lp_of_square(exp: WaveletExpansion, p: float, q: float) -> float:
    """``|| (sum |lambda chi^{(p)}|^q)^{1/q} ||_p`` on the grid.

    ``chi^{(p)}_{j,m} = 2^{jn/p}`` on the cube of side ``2^-j`` at ``m 2^-j``;
    each cube covers a whole block of grid cells, so its indicator is an
    index repeat.
    """
    system = exp.system
    spec = system.spec
    n = spec.n
    acc = np.zeros(spec.shape)
    for (j, G), arr in exp.bands.items():
        a = np.abs(arr) * 2.0 ** (j * n / p)
        rep = spec.N // arr.shape[0]
        # cube k covers samples [k rep, (k+1) rep) on a grid that starts at -L
        for ax in range(n):
            a = np.repeat(a, rep, axis=ax)
        acc = np.maximum(acc, a) if math.isinf(q) else acc + a ** q
    g = acc if math.isinf(q) else acc ** (1.0 / q)
    return float((np.sum(g ** p) * spec.cell) ** (1.0 / p))


def seq_mode(params: SpaceParams) -> Mode:
    return "b" if params.A == "B" else "f"


# --------------------------------------------------------------------------
# greedy approximation


def greedy_order(exp: WaveletExpansion) -> np.ndarray:
    """Flat indices by decreasing magnitude; ties keep lexicographic ``(j, G, m)``."""
    _, vals = exp.flat()
    return np.argsort(-np.abs(vals), kind="stable")


def greedy_approximate(exp: WaveletExpansion, k: int) -> tuple[WaveletExpansion, WaveletExpansion]:
    """Keep the ``k`` largest coefficients; return (kept, discarded)."""
    if k < 0:
        raise GridError("k must be nonnegative")
    _, vals = exp.flat()
    order = greedy_order(exp)
    keep = np.zeros(vals.size, dtype=bool)
    keep[order[:k]] = True
    keep &= vals != 0
    kept = exp.from_flat(np.where(keep, vals, 0))
    tail = exp.from_flat(np.where(keep, 0, vals))
    return kept, tail


def greedy_errors(exp: WaveletExpansion, dst: SpaceParams, ks: Iterable[int],
                  mode: Mode | None = None) -> np.ndarray:
    mode = mode or seq_mode(dst)
    return np.array([seq_norm(greedy_approximate(exp, int(k))[1], dst, mode) for k in ks])


def best_kterm_bruteforce(exp: WaveletExpansion, k: int, dst: SpaceParams,
                          mode: Mode | None = None) -> float:
    """Smallest discard error over every ``k``-subset of the nonzeros (test oracle)."""
    mode = mode or seq_mode(dst)
    _, vals = exp.flat()
    support = np.flatnonzero(vals)
    if support.size > 12:
        raise GridError("brute force is limited to 12 nonzero coefficients")
    if k >= support.size:
        return 0.0
    best = math.inf
    for keep in itertools.combinations(support, k):
        rest = vals.copy()
        rest[list(keep)] = 0
        best = min(best, seq_norm(exp.from_flat(rest), dst, mode))
    return best


# --------------------------------------------------------------------------
# random sparse families


DEFAULT_R = -0.5  # per unit dimension; sample_series uses r = -n/2
RESOLVED_GAP = 3  # levels this far below the finest one are resolved on the grid

# catalog series live on fixed levels inside a fixed cube, whatever the grid
SERIES_LEVELS = (-1, 0, 1)
SERIES_REACH = 16.0
SERIES_DEPTH = 12
SERIES_BOX = 32.0


def _inner_mask(system: WaveletSystem, inner: float) -> np.ndarray:
    """Flat mask of coefficients whose wavelet support lies in ``[-inner L, inner L)^n``."""
    spec = system.spec
    exp = WaveletExpansion.empty(system)
    parts = []
    for (j, G) in sorted(exp.bands):
        shape = exp.bands[(j, G)].shape
        k = np.arange(shape[0]) - system.offset(j)
        lo, hi = system.support(j, k)
        ok1 = (lo >= -inner * spec.L) & (hi <= inner * spec.L)
        mask = ok1
        for _ in range(spec.n - 1):
            mask = np.logical_and.outer(mask, ok1)
        parts.append(np.asarray(mask).ravel())
    return np.concatenate(parts)


def series_expansion(tf: TestFunction, spec: GridSpec, r: float | None = None,
                     order: int = 6, inner: float = 1.0) -> WaveletExpansion:
    """Random ``K``-sparse expansion with ``sum |lambda| = 1``.

    Positions are drawn uniformly without replacement among the detail
    coefficients whose wavelets fit in ``[-inner L, inner L)^n`` (all of
    them when ``inner = 1``, wrapping allowed); signs are random and the
    ``i``-th magnitude is proportional to ``i^-decay``.
    """
    if tf.kind != "wavelet_series":
        raise GridError(f"expected a wavelet_series, got {tf.kind}")
    seed, K, decay = tf.params
    system = WaveletSystem(spec, DEFAULT_R * spec.n if r is None else r, order)
    exp = WaveletExpansion.empty(system)
    _, vals = exp.flat()
    pool = np.arange(vals.size) if inner >= 1.0 else np.flatnonzero(_inner_mask(system, inner))
    if not 0 < K <= pool.size:
        raise GridError(f"sparsity must lie in [1, {pool.size}], got {K}")
    rng = np.random.default_rng(seed)
    pos = rng.choice(pool, size=K, replace=False)
    mags = np.arange(1, K + 1, dtype=float) ** (-decay)
    signs = rng.choice([-1.0, 1.0], size=K)
    vals[pos] = signs * mags / mags.sum()
    return exp.from_flat(vals)


@lru_cache(maxsize=8)
def _series_base(order: int) -> dict[str, np.ndarray]:
    """L2-normalized father and mother at level 0, position 0, on spacing ``2^-SERIES_DEPTH``.

    They come out of the same periodized filter bank as :func:`synthesize`,
    so positions follow its convention.
    """
    b = SERIES_DEPTH
    spec = GridSpec(1, int(2 * SERIES_BOX * 2 ** b), SERIES_BOX)
    system = WaveletSystem(spec, -0.5, order, levels=b)
    out = {}
    for kind in "FM":
        exp = WaveletExpansion.empty(system)
        k = system.offset(0)
        if kind == "M":
            exp.bands[(0, "M")][k] = 1.0 / system.scale(0)
        else:
            exp.tail[k] = 1.0
        vals = synthesize(exp).values.real
        vals.setflags(write=False)
        out[kind] = vals
    return out


def _base_support(base: np.ndarray) -> tuple[float, float]:
    nz = np.flatnonzero(base)
    step = 2.0 ** -SERIES_DEPTH
    return nz[0] * step - SERIES_BOX, nz[-1] * step - SERIES_BOX


def _series_pool(n: int, order: int) -> list[tuple[int, str, tuple[int, ...]]]:
    """Every ``(j, G, m)`` on the catalog levels whose support lies in the catalog cube."""
    base = _series_base(order)
    out = []
    for j in SERIES_LEVELS:
        w = 2.0 ** (-j)
        ok = {}
        for g in "FM":
            lo, hi = _base_support(base[g])
            span = int(SERIES_REACH / w) + int(math.ceil(max(abs(lo), abs(hi)))) + 1
            ok[g] = [m for m in range(-span, span + 1)
                     if (m + lo) * w >= -SERIES_REACH and (m + hi) * w <= SERIES_REACH]
        for G in _types(n):
            out.extend((j, G, m) for m in itertools.product(*(ok[g] for g in G)))
    return out


def _factor(base: np.ndarray, j: int, m: int, y: np.ndarray) -> np.ndarray:
    """``2^{j/2} g(2^j y - m)`` read off the base lattice."""
    pos = (2.0 ** j * y - m + SERIES_BOX) * 2.0 ** SERIES_DEPTH
    idx = np.round(pos).astype(np.int64)
    if np.max(np.abs(pos - idx)) > 1e-6:
        raise NonPowerOfTwo("grid points miss the series lattice")
    inside = (idx >= 0) & (idx < base.size)
    return 2.0 ** (j / 2.0) * np.where(inside, base[np.where(inside, idx, 0)], 0.0)


def series_terms(tf: TestFunction, n: int, order: int = 6) -> list[tuple[int, str, tuple[int, ...], float]]:
    """The ``(j, G, m, coefficient)`` terms of a catalog series."""
    seed, K, decay = tf.params
    pool = _series_pool(n, order)
    if not 0 < K <= len(pool):
        raise GridError(f"sparsity must lie in [1, {len(pool)}], got {K}")
    rng = np.random.default_rng(seed)
    pos = rng.choice(len(pool), size=K, replace=False)
    mags = np.arange(1, K + 1, dtype=float) ** (-decay)
    signs = rng.choice([-1.0, 1.0], size=K)
    return [(*pool[i], float(v)) for i, v in zip(pos, signs * mags / mags.sum())]


def sample_series(tf: TestFunction, spec: GridSpec) -> GridFunction:
    """Catalog samples of a sparse series ``x -> S(scale x)``.

    ``S`` is a sum of tensor wavelets with ``r = -n/2`` on levels
    ``SERIES_LEVELS``, each supported in ``[-SERIES_REACH, SERIES_REACH]^n``.
    The one-dimensional factors are fixed cascade samples at spacing
    ``2^-SERIES_DEPTH``, so ``S`` is the same function on every grid whose
    scaled points fall on that lattice.
    """
    n = spec.n
    base = _series_base(6)
    y = tf.scale * spec.axis
    out = np.zeros(spec.shape)
    for j, G, m, c in series_terms(tf, n):
        term = np.array(c)
        for g, ml in zip(G, m):
            term = np.multiply.outer(term, _factor(base[g], j, ml, y))
        out += term
    return GridFunction(spec, out, "physical", tf)


def kterm_family(count: int, seed: int, k_lo: int = 16, k_hi: int = 2048) -> list[TestFunction]:
    """``count`` flat sparse series with sparsities spaced geometrically in ``[k_lo, k_hi]``."""
    Ks = np.unique(np.round(np.geomspace(k_lo, k_hi, count)).astype(int))
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2 ** 31, size=Ks.size)
    return [TestFunction.wavelet_series(int(s), int(K)) for s, K in zip(seeds, Ks)]


def kterm_rate(family: Sequence[TestFunction | WaveletExpansion], src: SpaceParams, dst: SpaceParams,
               ks: Sequence[int], spec: GridSpec | None = None) -> dict:
    """Fitted log-log slope of the worst greedy error over the family.

    Each member is normalized to unit ``src`` norm, then greedily truncated;
    the error is the ``dst`` norm of what was dropped.
    """
    if not src.p < dst.p:
        raise GridError("k-term rates need p0 < p1")
    if not math.isclose(src.order, dst.order, rel_tol=1e-12, abs_tol=1e-12):
        raise GridError("source and target must share r = s - n/p")
    ks = np.asarray(ks, dtype=int)
    table = np.zeros(ks.size)
    for member in family:
        if isinstance(member, TestFunction):
            if spec is None:
                raise GridError("a grid is needed to expand catalog members")
            member = series_expansion(member, spec, src.order)
        norm = seq_norm(member, src, seq_mode(src))
        if norm == 0:
            continue
        table = np.maximum(table, greedy_errors(member.scaled(1.0 / norm), dst, ks))
    keep = table > 0
    slope, icpt = np.polyfit(np.log(ks[keep]), np.log(table[keep]), 1)
    return {"slope": float(slope), "intercept": float(icpt), "expected": 1.0 / dst.p - 1.0 / src.p,
            "k": ks.tolist(), "worst_error": table.tolist()}


def write_rate_table(rate: dict, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "worst_error"])
        for k, e in zip(rate["k"], rate["worst_error"]):
            w.writerow([k, repr(e)])
