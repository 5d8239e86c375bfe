"""Periodic grids, scaled Fourier transforms and the analytic test-function catalog.

A :class:`GridSpec` describes the box ``[-L, L)^n`` sampled with ``N`` points
per axis.  Functions on it are :class:`GridFunction` objects holding either
physical samples or spectral samples on the lattice ``xi_k = pi k / L``.

The forward transform approximates

    f_hat(xi) = (2 pi)^{-n/2} int f(x) exp(-i x.xi) dx

by ``h^n (2 pi)^{-n/2}`` times a DFT, with the phase of the left corner
``x_0 = -L`` folded in.  Spectral arrays are kept in numpy FFT order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Literal

import numpy as np
import scipy.fft as sfft

View = Literal["physical", "spectral"]

# Gauss-Legendre rule on [0, 1] used to integrate the mollifier.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)
_GL_NODES = 0.5 * (_GL_NODES + 1.0)
_GL_WEIGHTS = 0.5 * _GL_WEIGHTS


class GridError(ValueError):
    """Invalid grid or grid-function operation."""


class NonPowerOfTwo(GridError):
    pass


def _mollifier(v: np.ndarray) -> np.ndarray:
    # exp(-1/(1-u^2)) with u = 2v - 1, written to stay finite at v in {0, 1}.
    out = np.zeros_like(v)
    inside = (v > 0.0) & (v < 1.0)
    vi = v[inside]
    out[inside] = np.exp(-1.0 / (4.0 * vi * (1.0 - vi)))
    return out


def _mollifier_cdf(u: np.ndarray) -> np.ndarray:
    """Normalized integral of the mollifier from 0 to ``u`` for u in [0, 1]."""
    u = np.clip(u, 0.0, 1.0)
    out = np.empty_like(u)
    flat = u.ravel()
    res = out.ravel()
    total = float(np.sum(_GL_WEIGHTS * _mollifier(_GL_NODES)))
    chunk = 1 << 15
    for start in range(0, flat.size, chunk):
        uu = flat[start:start + chunk, None]
        res[start:start + chunk] = (uu[:, 0] * np.sum(
            _GL_WEIGHTS * _mollifier(uu * _GL_NODES), axis=1)) / total
    return out


def plateau(r: np.ndarray, inner: float, outer: float) -> np.ndarray:
    """Smooth radial cutoff: 1 for ``r <= inner``, 0 for ``r >= outer``.

    The transition is the normalized integral of the standard mollifier, so it
    is C-infinity and monotone.
    """
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    out[r <= inner] = 1.0
    mid = (r > inner) & (r < outer)
    if np.any(mid):
        out[mid] = 1.0 - _mollifier_cdf((r[mid] - inner) / (outer - inner))
    return out


def dyadic_symbol(xi_abs: np.ndarray, j: int) -> np.ndarray:
    """``phi0(2^-j xi) - phi0(2^{1-j} xi)`` with ``phi0 = plateau(., 1, 3/2)``."""
    return plateau(xi_abs * 2.0 ** (-j), 1.0, 1.5) - plateau(xi_abs * 2.0 ** (1 - j), 1.0, 1.5)


def _is_pow2(N: int) -> bool:
    return N >= 1 and (N & (N - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on ``[-L, L)^n`` with ``N`` points per axis."""

    n: int
    N: int
    L: float

    def __post_init__(self) -> None:
        if self.n not in (1, 2):
            raise GridError(f"dimension must be 1 or 2, got {self.n}")
        if int(self.N) != self.N or not _is_pow2(int(self.N)):
            raise NonPowerOfTwo(f"N must be a power of two, got {self.N}")
        if self.N < 16:
            raise GridError(f"N must be at least 16, got {self.N}")
        if not (self.L > 0 and math.isfinite(self.L)):
            raise GridError(f"L must be positive, got {self.L}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def dxi(self) -> float:
        return math.pi / self.L

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def cell(self) -> float:
        """Physical cell volume ``h^n``."""
        return self.h ** self.n

    @property
    def nyquist(self) -> float:
        return self.N * math.pi / (2.0 * self.L)

    @cached_property
    def axis(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    @cached_property
    def freq_axis(self) -> np.ndarray:
        # signed integer k in FFT order times pi/L
        return np.fft.fftfreq(self.N, d=1.0 / self.N) * self.dxi

    def coords(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*([self.axis] * self.n), indexing="ij"))

    def freqs(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*([self.freq_axis] * self.n), indexing="ij"))

    @cached_property
    def radius(self) -> np.ndarray:
        return np.sqrt(sum(c * c for c in self.coords()))

    @cached_property
    def xi_sq(self) -> np.ndarray:
        return sum(k * k for k in self.freqs())

    @cached_property
    def xi_abs(self) -> np.ndarray:
        return np.sqrt(self.xi_sq)

    @cached_property
    def _phase(self) -> np.ndarray:
        # exp(-i xi_k x_0) with x_0 = -L is (-1)^k; parity is the same in FFT order.
        k = np.arange(self.N) % 2
        sign1 = np.where(k == 0, 1.0, -1.0)
        out = sign1
        for _ in range(self.n - 1):
            out = np.multiply.outer(out, sign1)
        return out

    @property
    def spectral_scale(self) -> float:
        return self.cell * (2.0 * math.pi) ** (-self.n / 2.0)

    def to_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "L": self.L}


def build_grid(n: int, N: int, L: float) -> GridSpec:
    """Validated :class:`GridSpec`; raises :class:`NonPowerOfTwo` on bad ``N``."""
    return GridSpec(int(n), int(N), float(L))


# --------------------------------------------------------------------------
# catalog


_KINDS = ("gaussian", "bump", "riesz", "mixed_riesz", "delta", "constant",
          "wavelet_series", "translated_block", "external")
_SPECTRAL_KINDS = ("riesz", "mixed_riesz", "delta", "translated_block")


@dataclass(frozen=True)
class TestFunction:
    """Analytic test function ``x -> g(scale * x)``.

    Keeping the scale symbolic makes dilation exact: sampling a dilated
    catalog entry evaluates the formula at new points instead of
    interpolating grid data.
    """

    __test__ = False  # not a pytest class

    kind: str
    params: tuple = ()
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise GridError(f"unknown test function {self.kind!r}")
        if not self.scale > 0:
            raise GridError("scale must be positive")
        p = self.params
        if self.kind == "gaussian" and not p[0] > 0:
            raise GridError("gaussian width must be positive")
        if self.kind == "bump" and not p[0] > 0:
            raise GridError("bump radius must be positive")
        if self.kind == "mixed_riesz" and not (0 < p[0] < p[1]):
            raise GridError("mixed_riesz needs 0 < sigma < kappa")
        if self.kind == "riesz" and not p[0] > 0:
            raise GridError("riesz needs sigma > 0")

    # constructors -------------------------------------------------------
    @classmethod
    def gaussian(cls, a: float = 1.0) -> "TestFunction":
        return cls("gaussian", (float(a),))

    @classmethod
    def bump(cls, rho: float = 1.0) -> "TestFunction":
        return cls("bump", (float(rho),))

    @classmethod
    def riesz(cls, sigma: float) -> "TestFunction":
        return cls("riesz", (float(sigma),))

    @classmethod
    def mixed_riesz(cls, sigma: float, kappa: float) -> "TestFunction":
        return cls("mixed_riesz", (float(sigma), float(kappa)))

    @classmethod
    def delta(cls) -> "TestFunction":
        return cls("delta")

    @classmethod
    def constant(cls, c: float = 1.0) -> "TestFunction":
        return cls("constant", (float(c),))

    @classmethod
    def wavelet_series(cls, seed: int, sparsity: int, decay: float = 0.0) -> "TestFunction":
        return cls("wavelet_series", (int(seed), int(sparsity), float(decay)))

    @classmethod
    def translated_block(cls, j: int, m: tuple[int, ...] | int) -> "TestFunction":
        m = (m,) if isinstance(m, int) else tuple(int(v) for v in m)
        return cls("translated_block", (int(j), m))

    @classmethod
    def external(cls, path: str | Path) -> "TestFunction":
        return cls("external", (str(path),))

    def dilated(self, lam: float) -> "TestFunction":
        return TestFunction(self.kind, self.params, self.scale * float(lam))

    @property
    def label(self) -> str:
        args = ",".join(str(v) for v in self.params)
        tail = "" if self.scale == 1.0 else f"@{self.scale:g}"
        return f"{self.kind}({args}){tail}"

    @property
    def spectral(self) -> bool:
        return self.kind in _SPECTRAL_KINDS


def _riesz_symbol(xi_abs: np.ndarray, sigma: float, n: int) -> np.ndarray:
    out = np.zeros_like(xi_abs)
    nz = xi_abs > 0
    out[nz] = xi_abs[nz] ** (sigma - n)
    return out


def _check_riesz(sigma: float, n: int) -> None:
    if not 0.0 < sigma < n:
        raise GridError(f"riesz needs 0 < sigma < n, got sigma={sigma}, n={n}")


def _physical_profile(tf: TestFunction, n: int) -> Callable[[np.ndarray], np.ndarray]:
    if tf.kind == "gaussian":
        a = tf.params[0]
        return lambda r: np.exp(-a * r * r)
    if tf.kind == "bump":
        rho = tf.params[0]
        return lambda r: plateau(r, rho / 2.0, rho)
    if tf.kind == "constant":
        c = tf.params[0]
        return lambda r: np.full_like(r, c)
    raise GridError(f"{tf.kind} has no physical profile")


def _spectral_symbol(tf: TestFunction, spec: GridSpec) -> np.ndarray:
    """Spectral samples ``lam^-n g_hat(xi / lam)`` for spectrally defined kinds."""
    lam = tf.scale
    n = spec.n
    if tf.kind == "riesz":
        sigma = tf.params[0]
        _check_riesz(sigma, n)
        return lam ** (-sigma) * _riesz_symbol(spec.xi_abs, sigma, n)
    if tf.kind == "mixed_riesz":
        sigma, kappa = tf.params
        _check_riesz(sigma, n)
        _check_riesz(kappa, n)
        return (lam ** (-sigma) * _riesz_symbol(spec.xi_abs, sigma, n)
                + lam ** (-kappa) * _riesz_symbol(spec.xi_abs, kappa, n))
    if tf.kind == "delta":
        return np.full(spec.shape, lam ** (-n) * (2.0 * math.pi) ** (-n / 2.0))
    if tf.kind == "translated_block":
        j, m = tf.params
        if len(m) != n:
            raise GridError("translated_block offset must have n components")
        shift = 2.0 ** (-j)
        phase = sum(mi * shift * k for mi, k in zip(m, spec.freqs())) / lam
        body = dyadic_symbol(spec.xi_abs / lam, j) * (2.0 * math.pi) ** (-n / 2.0)
        return lam ** (-n) * body * np.exp(-1j * phase)
    raise GridError(f"{tf.kind} is not spectrally defined")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Immutable samples of a function on a :class:`GridSpec`."""

    spec: GridSpec
    values: np.ndarray
    view: View = "physical"
    source: TestFunction | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.view not in ("physical", "spectral"):
            raise GridError(f"unknown view {self.view!r}")
        vals = np.array(self.values, dtype=complex)
        if vals.shape != self.spec.shape:
            raise GridError(f"values have shape {vals.shape}, expected {self.spec.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def physical(self) -> "GridFunction":
        return self if self.view == "physical" else spectral_transform(self, "inverse")

    def spectral(self) -> "GridFunction":
        return self if self.view == "spectral" else spectral_transform(self, "forward")

    def with_values(self, values: np.ndarray, view: View | None = None) -> "GridFunction":
        return GridFunction(self.spec, values, view or self.view)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        a, b = self.physical(), other.physical()
        if a.spec != b.spec:
            raise GridError("grid mismatch")
        return GridFunction(a.spec, a.values + b.values)

    def __mul__(self, c: complex) -> "GridFunction":
        return GridFunction(self.spec, self.values * c, self.view)

    __rmul__ = __mul__


def zeros(spec: GridSpec) -> GridFunction:
    return GridFunction(spec, np.zeros(spec.shape))


def catalog_sample(tf: TestFunction, spec: GridSpec) -> GridFunction:
    """Sample a catalog entry; spectral kinds come back in the spectral view."""
    if tf.kind in ("gaussian", "bump", "constant"):
        prof = _physical_profile(tf, spec.n)
        return GridFunction(spec, prof(tf.scale * spec.radius), "physical", tf)
    if tf.spectral:
        return GridFunction(spec, _spectral_symbol(tf, spec), "spectral", tf)
    if tf.kind == "wavelet_series":
        from .wavelet import sample_series

        return sample_series(tf, spec)
    if tf.kind == "external":
        f = read_external(tf.params[0])
        if f.spec != spec:
            raise GridError(f"external file grid {f.spec} does not match {spec}")
        if tf.scale != 1.0:
            return dilate(f, tf.scale)
        return f
    raise GridError(f"cannot sample {tf.kind}")  # pragma: no cover


def spectral_transform(f: GridFunction, direction: Literal["forward", "inverse"]) -> GridFunction:
    """Scaled DFT between physical samples and the continuum transform."""
    spec = f.spec
    if direction == "forward":
        if f.view != "physical":
            raise GridError("forward transform needs physical view")
        vals = spec.spectral_scale * spec._phase * sfft.fftn(f.values)
        return GridFunction(spec, vals, "spectral", f.source)
    if direction == "inverse":
        if f.view != "spectral":
            raise GridError("inverse transform needs spectral view")
        vals = sfft.ifftn(f.values * spec._phase) / spec.spectral_scale
        return GridFunction(spec, vals, "physical", f.source)
    raise GridError(f"unknown direction {direction!r}")


def decays(f: GridFunction, rel: float = 1e-10) -> bool:
    """True when the samples are negligible on the outer eighth of the box."""
    vals = np.abs(f.physical().values)
    peak = vals.max()
    if peak == 0:
        return True
    spec = f.spec
    edge = np.zeros(spec.shape, dtype=bool)
    for c in spec.coords():
        edge |= np.abs(c) >= 0.75 * spec.L
    return bool(vals[edge].max() <= rel * peak)


def edge_ratio(f: GridFunction) -> float:
    """Largest spectral magnitude beyond 3/4 of Nyquist, relative to the peak."""
    vals = np.abs(f.spectral().values)
    peak = vals.max()
    if peak == 0:
        return 0.0
    outer = np.zeros(f.spec.shape, dtype=bool)
    for k in f.spec.freqs():
        outer |= np.abs(k) >= 0.75 * f.spec.nyquist
    return float(vals[outer].max() / peak)


def resolved(f: GridFunction, rel: float = 1e-4) -> bool:
    """True when the spectrum is negligible near the Nyquist frequency."""
    return edge_ratio(f) <= rel


def _dyadic_exponent(lam: float) -> int | None:
    e = math.log2(lam)
    k = round(e)
    return k if abs(e - k) < 1e-12 else None


def dilate(f: GridFunction, lam: float) -> GridFunction:
    """Samples of ``x -> f(lam x)``.

    Catalog functions are re-evaluated exactly.  Bare grid data accepts only
    ``lam = 2^j``: compression reads every ``2^j``-th sample, stretching uses
    the continuum spectrum at the lattice points ``2^|j| xi``.  Decaying data is
    treated as zero outside the box, everything else as periodic.
    """
    if not lam > 0:
        raise GridError("dilation factor must be positive")
    if lam == 1.0:
        return f
    if f.source is not None and f.source.kind != "external":
        return catalog_sample(f.source.dilated(lam), f.spec)
    j = _dyadic_exponent(lam)
    if j is None:
        raise GridError(f"non-dyadic dilation {lam} needs an analytic source")
    spec = f.spec
    N = spec.N
    periodic = not decays(f)
    if j > 0:
        step = 2 ** j
        idx = step * np.arange(N) + (1 - step) * (N // 2)
        inside = (idx >= 0) & (idx < N)
        idx_mod = idx % N
        vals = f.physical().values
        for ax in range(spec.n):
            vals = np.take(vals, idx_mod, axis=ax)
            if not periodic:
                shape = [1] * spec.n
                shape[ax] = N
                vals = vals * inside.reshape(shape)
        return GridFunction(spec, vals, "physical")
    if periodic:
        raise GridError("stretching a non-decaying sample set is not representable on the box")
    step = 2 ** (-j)
    # g_hat(xi_k) = lam^-n f_hat(step * xi_k); lattice index k -> step * k.
    fh = np.fft.fftshift(f.spectral().values)
    k = np.arange(N) - N // 2
    src = step * k + N // 2
    ok = (src >= 0) & (src < N)
    out = fh
    for ax in range(spec.n):
        taken = np.take(out, np.clip(src, 0, N - 1), axis=ax)
        shape = [1] * spec.n
        shape[ax] = N
        out = taken * ok.reshape(shape)
    out = np.fft.ifftshift(out) * lam ** (-spec.n)
    return spectral_transform(GridFunction(spec, out, "spectral"), "inverse")


# --------------------------------------------------------------------------
# norms


def lp_norm(f: GridFunction, p: float) -> float:
    """Riemann-sum ``L_p`` quasi-norm; ``p = inf`` gives the max modulus."""
    if f.view != "physical":
        raise GridError("lp_norm needs the physical view")
    if not p > 0:
        raise GridError("p must be positive")
    a = np.abs(f.values)
    if math.isinf(p):
        return float(a.max())
    return float((np.sum(a ** p) * f.spec.cell) ** (1.0 / p))


def lorentz_weak_norm(f: GridFunction, r: float) -> float:
    """``sup_k (k h^n)^{1/r} a_k`` over the decreasing rearrangement ``a_k``."""
    if f.view != "physical":
        raise GridError("lorentz_weak_norm needs the physical view")
    a = np.sort(np.abs(f.values).ravel())[::-1]
    k = np.arange(1, a.size + 1)
    return float(np.max((k * f.spec.cell) ** (1.0 / r) * a))


def spectral_l2(f: GridFunction) -> float:
    """``L_2`` norm computed on the spectral lattice."""
    g = f.spectral()
    return float(np.sqrt(np.sum(np.abs(g.values) ** 2) * g.spec.dxi ** g.spec.n))


# --------------------------------------------------------------------------
# external files


def write_external(f: GridFunction, path: str | Path) -> None:
    """Write real parts as little-endian float64 plus a ``.json`` sidecar."""
    path = Path(path)
    np.ascontiguousarray(f.values.real, dtype="<f8").tofile(path)
    meta = {**f.spec.to_dict(), "view": f.view}
    path.with_name(path.name + ".json").write_text(json.dumps(meta, sort_keys=True))


def read_external(path: str | Path) -> GridFunction:
    path = Path(path)
    meta = json.loads(path.with_name(path.name + ".json").read_text())
    spec = build_grid(meta["n"], meta["N"], meta["L"])
    raw = np.fromfile(path, dtype="<f8")
    if raw.size != spec.N ** spec.n:
        raise GridError(f"{path} holds {raw.size} values, expected {spec.N ** spec.n}")
    src = TestFunction.external(str(path))
    return GridFunction(spec, raw.reshape(spec.shape), meta.get("view", "physical"), src)
