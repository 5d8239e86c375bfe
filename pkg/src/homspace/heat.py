"""Gauss-Weierstrass semigroup as a spectral multiplier.

``W_t`` multiplies the spectrum by ``exp(-t |xi|^2)`` and ``d^m/dt^m W_t`` by
``(-|xi|^2)^m exp(-t |xi|^2)``.  On a periodic box this is exact for the
torus; :class:`FreeSpaceHeat` adds a grid pyramid that follows a decaying
function to large times without wrap-around, and :class:`HeatEngine` picks
between the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
import scipy.fft as sfft

from .grid import (GridError, GridFunction, GridSpec, catalog_sample, decays, edge_ratio,
                   spectral_transform)


@dataclass(frozen=True)
class HeatQuery:
    """Time ``t >= 0`` and derivative order ``m``; ``m`` must be 0 at ``t = 0``."""

    t: float
    m: int = 0

    def __post_init__(self) -> None:
        if self.t < 0 or not math.isfinite(self.t):
            raise GridError(f"heat time must be finite and >= 0, got {self.t}")
        if self.m < 0 or int(self.m) != self.m:
            raise GridError(f"derivative order must be a nonnegative integer, got {self.m}")
        if self.t == 0 and self.m > 0:
            raise GridError("time derivatives are undefined at t = 0")


def heat_multiplier(spec: GridSpec, t: float, m: int = 0) -> np.ndarray:
    xi2 = spec.xi_sq
    mult = np.exp(-t * xi2)
    if m:
        mult = mult * (-xi2) ** m
    return mult


def heat_evolve(f: GridFunction, q: HeatQuery) -> GridFunction:
    """``d^m/dt^m W_t f`` on the torus, returned in the physical view."""
    if q.t == 0:
        return f.physical()
    g = f.spectral()
    vals = g.values * heat_multiplier(f.spec, q.t, q.m)
    return spectral_transform(GridFunction(f.spec, vals, "spectral"), "inverse")


def heat_series(f: GridFunction, times: Iterable[float], m: int = 0) -> Iterator[np.ndarray]:
    """Physical samples of ``d^m/dt^m W_t f`` for each ``t``, sharing one forward FFT."""
    spec = f.spec
    fh = f.spectral().values * spec._phase
    for t in times:
        HeatQuery(t, m if t > 0 else 0)
        yield sfft.ifftn(fh * heat_multiplier(spec, t, m)) / spec.spectral_scale


def support_radius(f: GridFunction, rel: float = 1e-13) -> float:
    vals = np.abs(f.physical().values)
    peak = vals.max()
    if peak == 0:
        return 0.0
    return float(f.spec.radius[vals > rel * peak].max())


# Heat-kernel mass beyond 10 sqrt(t) is below exp(-25); this is the wrap margin.
WRAP = 10.0


@dataclass
class _Level:
    spec: GridSpec
    fhat: np.ndarray  # spectral samples of W_T f in FFT order
    T: float


class FreeSpaceHeat:
    """Heat flow of a decaying function on all of R^n.

    Level ``k`` is a grid with the same ``N`` on a box ``2^k`` times larger,
    holding ``W_{T_k} f`` with ``sqrt(T_k) = 2 h_k``; that smoothing makes the
    coarser sampling alias-free.  A query at time ``t`` runs on the finest
    level whose box still contains the spread-out function.
    """

    def __init__(self, f: GridFunction, support: float | None = None):
        self.f = f
        self.radius = support_radius(f) if support is None else support
        self.levels: list[_Level] = [_Level(f.spec, f.spectral().values.copy(), 0.0)]
        self.leak = 0.0  # largest relative edge value seen when coarsening

    def _fits(self, spec: GridSpec, t: float) -> bool:
        return self.radius + WRAP * math.sqrt(t) <= spec.L

    def _grow(self) -> _Level:
        lev = self.levels[-1]
        spec = lev.spec
        coarse = GridSpec(spec.n, spec.N, 2.0 * spec.L)
        T = (2.0 * coarse.h) ** 2
        vals = sfft.ifftn(lev.fhat * spec._phase * heat_multiplier(spec, T - lev.T, 0))
        vals /= spec.spectral_scale
        N = spec.N
        new = np.zeros(coarse.shape, dtype=complex)
        inner = tuple(slice(N // 4, 3 * N // 4) for _ in range(spec.n))
        new[inner] = vals[tuple(slice(0, N, 2) for _ in range(spec.n))]
        edge = np.zeros(spec.shape, dtype=bool)
        for c in spec.coords():
            edge |= np.abs(c) >= 0.9 * spec.L
        peak = np.abs(vals).max()
        if peak > 0:
            self.leak = max(self.leak, float(np.abs(vals[edge]).max() / peak))
        fhat = coarse.spectral_scale * coarse._phase * sfft.fftn(new)
        level = _Level(coarse, fhat, T)
        self.levels.append(level)
        return level

    def level_for(self, t: float) -> _Level:
        for lev in self.levels:
            if lev.T <= t and self._fits(lev.spec, t):
                return lev
        while True:
            lev = self._grow()
            if lev.T <= t and self._fits(lev.spec, t):
                return lev
            if len(self.levels) > 64:  # pragma: no cover
                raise GridError(f"no pyramid level for t={t}")

    def evolve(self, t: float, m: int = 0) -> tuple[GridSpec, np.ndarray]:
        """Grid and physical samples of ``d^m/dt^m W_t f``."""
        HeatQuery(t, m)
        lev = self.level_for(t)
        spec = lev.spec
        mult = np.exp(-(t - lev.T) * spec.xi_sq)
        if m:
            mult = mult * (-spec.xi_sq) ** m
        vals = sfft.ifftn(lev.fhat * spec._phase * mult) / spec.spectral_scale
        return spec, vals


def _cutoff_time(f: GridFunction, cut: float) -> float:
    ratio = edge_ratio(f)
    if ratio <= cut:
        return 0.0
    xi_edge = 0.75 * f.spec.nyquist
    return math.log(ratio / cut) / xi_edge ** 2


class HeatEngine:
    """Chooses how ``W_t f`` is evaluated and which times are trustworthy.

    Decaying functions go through :class:`FreeSpaceHeat` and every ``t > 0``
    is valid.  Anything else stays on its own torus, where times with
    ``10 sqrt(t) > L`` see the periodization.  ``mode="box"`` forces the
    torus for every input.

    Times below ``t_lo`` are dropped too, where ``t_lo`` is the time the
    multiplier needs to push the spectrum near Nyquist under ``CUT`` of its
    peak.  Well-resolved data gets ``t_lo = 0``; a delta gets about ``1.2 h^2``.
    A decaying catalog function is resampled on smaller boxes with the same
    ``N`` (zoom levels), which moves ``t_lo`` down until the function is
    resolved or the box hugs its support.
    """

    CUT = 1e-3

    def __init__(self, f: GridFunction, mode: str = "auto"):
        if mode not in ("auto", "box"):
            raise GridError(f"unknown heat engine mode {mode!r}")
        self.f = f
        self.spec = f.spec
        self.free = mode == "auto" and decays(f)
        self._pyramid = FreeSpaceHeat(f) if self.free else None
        self._fh = f.spectral().values * f.spec._phase
        self.radius = support_radius(f) if decays(f) else 0.0
        self.t_lo = _cutoff_time(f, self.CUT)
        self._zoom: list[tuple[float, GridSpec, np.ndarray]] = []
        if self.free and self.t_lo > 0:
            self._build_zoom()

    def _build_zoom(self) -> None:
        src = self.f.source
        if src is None or src.kind == "external":
            return
        spec = self.spec
        ratio = edge_ratio(self.f)
        while len(self._zoom) < 8 and ratio > self.CUT:
            spec = GridSpec(spec.n, spec.N, spec.L / 2.0)
            if self.radius > 0.75 * spec.L:
                break
            try:
                g = catalog_sample(src, spec)
            except GridError:
                break
            finer = edge_ratio(g)
            # a kernel with no scale (delta, Riesz) never improves
            if not decays(g) or finer > 0.5 * ratio:
                break
            ratio = finer
            lo = _cutoff_time(g, self.CUT)
            self._zoom.append((lo, spec, g.spectral().values * spec._phase))

    def t_bounds(self) -> tuple[float, float]:
        lo = min([self.t_lo] + [z[0] for z in self._zoom])
        if self.free:
            return lo, math.inf
        hi = max(self.spec.L - self.radius, 0.0) / WRAP
        return lo, hi * hi

    def admits(self, t: float) -> bool:
        lo, hi = self.t_bounds()
        return lo <= t <= hi

    def evolve(self, t: float, m: int = 0) -> tuple[GridSpec, np.ndarray]:
        if self._zoom and t < self.t_lo:
            # coarsest zoom level that resolves t and still holds the spread
            for lo, spec, fh in self._zoom:
                if lo <= t and self.radius + WRAP * math.sqrt(t) <= spec.L:
                    HeatQuery(t, m)
                    vals = sfft.ifftn(fh * heat_multiplier(spec, t, m)) / spec.spectral_scale
                    return spec, vals
        if self._pyramid is not None:
            return self._pyramid.evolve(t, m)
        HeatQuery(t, m)
        spec = self.spec
        vals = sfft.ifftn(self._fh * heat_multiplier(spec, t, m)) / spec.spectral_scale
        return spec, vals

    @property
    def leak(self) -> float:
        return self._pyramid.leak if self._pyramid is not None else 0.0
