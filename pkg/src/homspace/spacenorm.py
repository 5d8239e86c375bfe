"""Heat-kernel quasi-norms of B and F type, and a divergence probe.

For ``s < 0`` the norms are weighted ``t``-integrals of ``W_t f``.  Inside the
strip ``n(1/p - 1) < s < n/p`` and on its two edges they use ``d^m/dt^m W_t f``
with ``m > s/2`` plus a second "anchor" term that pins down the constant
ambiguity: the sup-type norm with exponent ``s - n/p``, or ``sup |f|`` on the
line ``s = n/p``.

Integrals over ``t`` run over ``t = 4^l`` with the trapezoid rule in ``log t``.
An infinite norm is a result, reported as ``verdict="diverging"`` with a
growth descriptor from :func:`probe_partials`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
import scipy.fft as sfft

from .grid import GridError, GridFunction, GridSpec, build_grid, decays
from .heat import WRAP, HeatEngine, support_radius

Regime = Literal["NegativeSmoothness", "Strip", "LowerLimit", "UpperLimit"]

LN4 = math.log(4.0)


class RegimeError(ValueError):
    """Parameters outside every regime the heat norms cover."""


class ProbeError(ValueError):
    """Too few cutoffs to fit a growth rate."""


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


def _pstr(v: float) -> str:
    return "inf" if math.isinf(v) else f"{v:g}"


@dataclass(frozen=True)
class SpaceParams:
    """Family ``A`` in {B, F}, integrability ``p``, summability ``q``, smoothness ``s``."""

    A: str
    p: float
    q: float
    s: float
    n: int = 1

    def __post_init__(self) -> None:
        if self.A not in ("B", "F"):
            raise RegimeError(f"family must be 'B' or 'F', got {self.A!r}")
        if not (self.p > 0 and self.q > 0):
            raise RegimeError("p and q must be positive")
        if self.n not in (1, 2):
            raise RegimeError("n must be 1 or 2")
        self.regime  # validates

    @property
    def order(self) -> float:
        """Homogeneity order ``s - n/p`` (the anchor exponent)."""
        return self.s - self.n / self.p

    @property
    def r(self) -> float:
        """``r`` with ``-n/r = s - n/p``; infinite on the line ``s = n/p``."""
        return math.inf if _close(self.order, 0.0) else -self.n / self.order

    @property
    def sigma_p(self) -> float:
        return max(0.0, self.n * (1.0 / self.p - 1.0))

    @property
    def m(self) -> int:
        """Smallest nonnegative integer strictly above ``s/2``; 0 when ``s < 0``."""
        if self.s < 0:
            return 0
        return int(math.floor(self.s / 2.0)) + 1

    @property
    def regime(self) -> Regime:
        s, p, q, n = self.s, self.p, self.q, self.n
        if s < 0:
            return "NegativeSmoothness"
        if self.A == "F" and math.isinf(p):
            raise RegimeError("F with p = inf is only covered for s < 0")
        lower = n * (1.0 / p - 1.0)
        upper = n / p
        if lower < s < upper and not (_close(s, lower) or _close(s, upper)):
            return "Strip"
        if _close(s, lower) and self.A == "B" and math.isinf(q):
            return "LowerLimit"
        if _close(s, upper) and ((self.A == "F" and p <= 1) or (self.A == "B" and q <= 1)):
            return "UpperLimit"
        raise RegimeError(f"no heat norm for {self.label}")

    @property
    def label(self) -> str:
        return f"{self.A}(p={_pstr(self.p)},q={_pstr(self.q)},s={self.s:g},n={self.n})"

    def to_dict(self) -> dict:
        return {"A": self.A, "p": _pstr(self.p), "q": _pstr(self.q), "s": self.s, "n": self.n}


@dataclass(frozen=True)
class TGrid:
    """Dyadic heat times ``t = 4^l`` for integer ``l`` in ``[l_min, l_max]``."""

    l_min: int = -14
    l_max: int = 14

    @property
    def ells(self) -> np.ndarray:
        return np.arange(self.l_min, self.l_max + 1)

    def widened(self, by: int) -> "TGrid":
        return TGrid(self.l_min - by, self.l_max + by)


@dataclass
class NormResult:
    """Outcome of a norm evaluation; ``value`` is None when diverging."""

    verdict: Literal["finite", "diverging"]
    value: float | None
    rate: dict | None
    main: float | None
    anchor: float | None = None
    truncation: dict = field(default_factory=dict)
    tails: dict = field(default_factory=dict)
    terms: np.ndarray | None = field(default=None, repr=False)
    index: np.ndarray | None = field(default=None, repr=False)

    @property
    def finite(self) -> bool:
        return self.verdict == "finite"

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "components": {"main": self.main, "anchor": self.anchor},
            "truncation": {k: self.truncation.get(k) for k in ("l_min", "l_max", "j_min", "j_max")},
            "tails": {k: self.tails.get(k) for k in ("first_term", "last_term")},
        }
        if self.value is not None:
            out["value"] = self.value
        if self.rate is not None:
            out["rate"] = self.rate
        return out

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


# --------------------------------------------------------------------------
# divergence probe


def outward_order(count: int, center: int) -> list[int]:
    """Indices ``center, center+1, center-1, center+2, ...`` clipped to ``[0, count)``."""
    order = [center]
    k = 1
    while len(order) < count:
        for i in (center + k, center - k):
            if 0 <= i < count:
                order.append(i)
        k += 1
    return order


def _fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    if np.ptp(y) <= 1e-13 * max(1.0, float(np.max(np.abs(y)))):
        return 0.0, 0.0
    slope, icpt = np.polyfit(x, y, 1)
    resid = y - (slope * x + icpt)
    ss = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss if ss > 0 else 0.0
    return float(slope), r2


def _ends_decay(terms: Sequence[float], k: int = 3) -> bool:
    """True when both ends of ``terms`` fall off geometrically going outward."""
    a = np.asarray(terms, dtype=float)
    if a.size < 2 * k:
        return False
    for seq in (a[:k][::-1], a[-k:]):
        if np.any(seq <= 0):
            if seq[-1] == 0:
                continue
            return False
        if np.any(seq[1:] / seq[:-1] >= 0.97):
            return False
    return True


def probe_partials(partials: Sequence[float], var: str = "t", min_cutoffs: int = 6,
                   steps_per_unit: float = 2.0, terms: Sequence[float] | None = None) -> dict:
    """Classify growth of nested partial quantities ``P_1 <= P_2 <= ...``.

    Entry ``M`` uses the first ``M`` terms.  The fit runs over the upper half of
    the cutoffs: ``log P`` against ``log M``.  A slope above 0.1 with
    ``R^2 > 0.9`` means diverging.  Diverging sequences are then split into
    polynomial growth in the cutoff scale (``log P`` linear in ``M``) and
    logarithmic growth, whichever fits better.  ``exponent`` is the slope of
    ``log2 P`` per unit of the growing-side index, using ``steps_per_unit``
    terms per unit (2 for symmetric windows, 1 for one-sided ones).

    When the underlying ``terms`` are given in index order and fall off
    geometrically at both ends, the sequence is bounded whatever the fit
    says; a window clipped next to the peak otherwise looks like growth.
    """
    P = np.asarray(partials, dtype=float)
    total = P.size
    first = int(math.ceil(total / 2))
    cut = np.arange(first, total + 1)
    if cut.size < min_cutoffs:
        raise ProbeError(f"need at least {min_cutoffs} cutoffs, have {cut.size}")
    vals = P[cut - 1]
    if np.all(vals == 0):
        return {"class": "bounded", "slope": 0.0, "r2": 0.0, "exponent": None,
                "var": var, "cutoffs": int(cut.size)}
    if np.any(vals <= 0):
        vals = np.maximum(vals, np.min(vals[vals > 0]))
    y = np.log(vals)
    slope, r2 = _fit(np.log(cut), y)
    out = {"class": "bounded", "slope": slope, "r2": r2, "exponent": None,
           "var": var, "cutoffs": int(cut.size)}
    if slope > 0.1 and r2 > 0.9 and not (terms is not None and _ends_decay(terms)):
        lin_slope, lin_r2 = _fit(cut.astype(float), y)
        if lin_r2 > r2:
            out["class"] = "polynomial"
            out["exponent"] = lin_slope * steps_per_unit / math.log(2.0)
        else:
            out["class"] = "log"
    return out


def _diverging(rate: dict) -> bool:
    return rate["class"] != "bounded"


# --------------------------------------------------------------------------
# shared helpers


def _lp(vals: np.ndarray, cell: float, p: float) -> float:
    a = np.abs(vals)
    if math.isinf(p):
        return float(a.max())
    return float((np.sum(a ** p) * cell) ** (1.0 / p))


def _trap_weights(k: int) -> np.ndarray:
    w = np.ones(k)
    if k > 1:
        w[0] = w[-1] = 0.5
    return w


def _geometric_tail(terms: np.ndarray) -> float:
    """Sum beyond the end of a geometrically decaying sequence, or 0."""
    if terms.size < 4 or terms[-1] <= 0 or terms[-2] <= 0 or terms[-3] <= 0:
        return 0.0
    r1 = terms[-1] / terms[-2]
    r2 = terms[-2] / terms[-3]
    if r1 < 0.97 and abs(r1 - r2) < 0.05 * r2:
        return float(terms[-1] * r1 / (1.0 - r1))
    return 0.0


def _sum_q(terms: np.ndarray, q: float, complete: bool) -> tuple[float, float]:
    """Trapezoid ``(ln4 sum w A^q)^{1/q}`` with optional geometric end tails."""
    tq = terms ** q
    total = float(np.sum(_trap_weights(tq.size) * tq))
    extra = 0.0
    if complete and tq.size > 1:
        for seq in (tq, tq[::-1]):
            tail = _geometric_tail(seq)
            if tail > 0:
                extra += 0.5 * seq[-1] + tail
    return (LN4 * (total + extra)) ** (1.0 / q), (LN4 * extra) ** (1.0 / q) if extra else 0.0


def _center(ells: np.ndarray) -> int:
    return (ells.size - 1) // 2


_ENGINES: list[tuple[GridFunction, str, HeatEngine]] = []


def _engine(f: GridFunction, mode: str) -> HeatEngine:
    """Engine for ``f``, shared by the main term and the anchor term of one norm."""
    for g, m, eng in _ENGINES:
        if g is f and m == mode:
            return eng
    eng = HeatEngine(f, mode)
    _ENGINES.insert(0, (f, mode, eng))
    del _ENGINES[4:]
    return eng


def _admitted(engine: HeatEngine, tgrid: TGrid, ball: float = 0.0) -> np.ndarray:
    lo, hi = engine.t_bounds()
    if ball and math.isfinite(hi):
        # the averaging ball adds sqrt(t) to the reach of W_t f
        hi = (math.sqrt(hi) * WRAP / (WRAP + ball)) ** 2
    ells = tgrid.ells
    t = 4.0 ** ells.astype(float)
    return ells[(t >= lo) & (t <= hi)]


def _require_family(params: SpaceParams, A: str) -> None:
    if params.A != A:
        raise RegimeError(f"expected an {A}-space, got {params.label}")


def _order(params: SpaceParams, m: int | None) -> int:
    """Derivative order: the smallest admissible one unless ``m`` is given."""
    if m is None:
        return params.m
    if int(m) != m or m < 0 or not m > params.s / 2.0:
        raise RegimeError(f"need an integer m >= 0 with m > s/2, got m={m}, s={params.s}")
    return int(m)


def _weighted_norms(engine: HeatEngine, ells: np.ndarray, s: float, m: int, p: float) -> np.ndarray:
    out = np.empty(ells.size)
    for i, ell in enumerate(ells):
        t = 4.0 ** float(ell)
        spec, vals = engine.evolve(t, m)
        out[i] = t ** (m - s / 2.0) * _lp(vals, spec.cell, p)
    return out


def _partials_b(terms: np.ndarray, q: float, order: list[int]) -> np.ndarray:
    seq = terms[order]
    if math.isinf(q):
        return np.maximum.accumulate(seq)
    return np.cumsum(seq ** q) ** (1.0 / q)


def _sup_norm(f: GridFunction) -> float:
    return float(np.abs(f.physical().values).max())


def _second_term(f: GridFunction, params: SpaceParams, tgrid: TGrid,
                 engine: str) -> tuple[float | None, dict | None]:
    reg = params.regime
    if reg in ("Strip", "LowerLimit"):
        res = anchor_norm(f, params.order, tgrid, engine=engine)
        return (res.value, None) if res.finite else (None, res.rate)
    if reg == "UpperLimit":
        return _sup_norm(f), None
    return None, None


def _assemble(main_terms: np.ndarray, ells: np.ndarray, q: float, rate: dict,
              anchor: tuple[float | None, dict | None], regime: str, complete: bool,
              extra_trunc: dict | None = None) -> NormResult:
    anchor_val, anchor_rate = anchor
    trunc = {"l_min": int(ells.min()), "l_max": int(ells.max()), "j_min": None, "j_max": None}
    if extra_trunc:
        trunc.update(extra_trunc)
    tails = {"first_term": float(main_terms[0]), "last_term": float(main_terms[-1])}
    if math.isinf(q):
        main = float(main_terms.max())
    else:
        main, tail_part = _sum_q(main_terms, q, complete)
        tails["completed"] = tail_part
    if _diverging(rate) or anchor_rate is not None:
        use = rate if _diverging(rate) else anchor_rate
        return NormResult("diverging", None, use, None if _diverging(rate) else main,
                          anchor_val, trunc, tails, main_terms, ells)
    value = main + (anchor_val or 0.0)
    has_anchor = regime in ("Strip", "LowerLimit", "UpperLimit")
    return NormResult("finite", value, rate, main, anchor_val if has_anchor else None,
                      trunc, tails, main_terms, ells)


# --------------------------------------------------------------------------
# evaluators


def heat_b_norm(f: GridFunction, params: SpaceParams, tgrid: TGrid | None = None, *,
                engine: str = "auto", complete_tails: bool = True, m: int | None = None) -> NormResult:
    """B-type heat norm with the anchor term the regime calls for."""
    _require_family(params, "B")
    tgrid = tgrid or TGrid()
    eng = _engine(f, engine)
    ells = _admitted(eng, tgrid)
    m = _order(params, m)
    terms = _weighted_norms(eng, ells, params.s, m, params.p)
    order = outward_order(ells.size, _center(ells))
    rate = probe_partials(_partials_b(terms, params.q, order), "t", terms=terms)
    anchor = _second_term(f, params, tgrid, engine)
    res = _assemble(terms, ells, params.q, rate, anchor, params.regime, complete_tails)
    res.tails["pyramid_leak"] = eng.leak
    return res


def anchor_norm(f: GridFunction, r_exp: float, tgrid: TGrid | None = None, *,
                engine: str = "auto") -> NormResult:
    """``sup_{x,t} t^{-r_exp/2} |W_t f(x)|`` for ``-n <= r_exp < 0``."""
    n = f.spec.n
    if not (-n - 1e-12 <= r_exp < 0):
        raise RegimeError(f"anchor exponent must lie in [-n, 0), got {r_exp}")
    tgrid = tgrid or TGrid()
    eng = _engine(f, engine)
    ells = _admitted(eng, tgrid)
    terms = _weighted_norms(eng, ells, r_exp, 0, math.inf)
    order = outward_order(ells.size, _center(ells))
    rate = probe_partials(np.maximum.accumulate(terms[order]), "t", terms=terms)
    trunc = {"l_min": int(ells.min()), "l_max": int(ells.max()), "j_min": None, "j_max": None}
    tails = {"first_term": float(terms[0]), "last_term": float(terms[-1]), "pyramid_leak": eng.leak}
    if _diverging(rate):
        return NormResult("diverging", None, rate, None, None, trunc, tails, terms, ells)
    val = float(terms.max())
    return NormResult("finite", val, rate, val, None, trunc, tails, terms, ells)


def _zero_pad(f: GridFunction, budget: int, max_factor: int | None = None) -> GridFunction:
    """Embed ``f`` in the centre of a box up to ``max_factor`` times wider."""
    spec = f.spec
    factor = 1
    while (spec.N * factor * 2) ** spec.n <= budget and (max_factor is None or factor < max_factor):
        factor *= 2
    if factor == 1:
        return f
    big = build_grid(spec.n, spec.N * factor, spec.L * factor)
    vals = np.zeros(big.shape, dtype=complex)
    lo = (big.N - spec.N) // 2
    vals[tuple(slice(lo, lo + spec.N) for _ in range(spec.n))] = f.physical().values
    return GridFunction(big, vals)


def heat_f_norm(f: GridFunction, params: SpaceParams, tgrid: TGrid | None = None, *,
                engine: str = "auto", pad_budget: int = 1 << 18, m: int | None = None) -> NormResult:
    """F-type heat norm: ``t``-quadrature at each point, then ``L_p`` in space.

    The pointwise integral needs every time on one grid, so this runs on the
    torus.  Under ``engine="auto"`` a decaying function is zero-padded up to
    ``pad_budget`` samples first, and ``p = q`` goes through
    :func:`heat_b_norm` since both norms are then the same double integral.
    """
    _require_family(params, "F")
    if math.isinf(params.p):
        return f_infinity_norm(f, params.s, params.q, tgrid)
    if engine == "auto" and _close(params.p, params.q):
        return heat_b_norm(f, SpaceParams("B", params.p, params.q, params.s, params.n), tgrid, m=m)
    tgrid = tgrid or TGrid()
    g = _zero_pad(f, pad_budget) if (engine == "auto" and decays(f)) else f
    eng = HeatEngine(g, "box")
    ells = _admitted(eng, tgrid)
    m, q, p, s = _order(params, m), params.q, params.p, params.s
    spec = g.spec
    order = outward_order(ells.size, _center(ells))
    slices = {}
    layer_norms = np.empty(ells.size)
    for i, ell in enumerate(ells):
        t = 4.0 ** float(ell)
        _, vals = eng.evolve(t, m)
        a = t ** (m - s / 2.0) * np.abs(vals)
        slices[i] = a
        layer_norms[i] = _lp(a, spec.cell, p)
    acc = np.zeros(spec.shape)
    partials = np.empty(ells.size)
    for k, i in enumerate(order):
        if math.isinf(q):
            acc = np.maximum(acc, slices[i])
            partials[k] = _lp(acc, spec.cell, p)
        else:
            acc += slices[i] ** q
            partials[k] = _lp(acc ** (1.0 / q), spec.cell, p)
    rate = probe_partials(partials, "t", terms=layer_norms)
    if math.isinf(q):
        main = partials[-1]
    else:
        w = _trap_weights(ells.size)
        tot = sum(w[i] * slices[i] ** q for i in range(ells.size))
        main = _lp((LN4 * tot) ** (1.0 / q), spec.cell, p)
    anchor_val, anchor_rate = _second_term(f, params, tgrid, engine)
    trunc = {"l_min": int(ells.min()), "l_max": int(ells.max()), "j_min": None, "j_max": None}
    tails = {"first_term": float(layer_norms[0]), "last_term": float(layer_norms[-1]),
             "box_L": spec.L}
    if _diverging(rate) or anchor_rate is not None:
        use = rate if _diverging(rate) else anchor_rate
        return NormResult("diverging", None, use, None, anchor_val, trunc, tails, layer_norms, ells)
    has_anchor = params.regime != "NegativeSmoothness"
    value = float(main) + (anchor_val or 0.0)
    return NormResult("finite", value, rate, float(main), anchor_val if has_anchor else None,
                      trunc, tails, layer_norms, ells)


def _ball_kernel(spec: GridSpec, radius: float) -> np.ndarray:
    """Spectrum (unnormalized DFT) of the periodic ball indicator centred at index 0."""
    axes = [np.minimum(np.arange(spec.N), spec.N - np.arange(spec.N)) * spec.h] * spec.n
    mesh = np.meshgrid(*axes, indexing="ij")
    dist = np.sqrt(sum(c * c for c in mesh))
    return sfft.fftn((dist <= radius + 1e-12 * spec.h).astype(float))


def f_infinity_norm(f: GridFunction, s: float, q: float, tgrid: TGrid | None = None, *,
                    pad_budget: int = 1 << 18) -> NormResult:
    """Carleson-type norm for ``F`` with ``p = inf`` and ``s < 0``.

    ``Q(x, t) = t^{-n/2} int_0^t int_{|x-y| <= sqrt t} tau^{-sq/2} |W_tau f(y)|^q dy dtau/tau``
    is evaluated for grid points ``x`` and dyadic ``t``; the ``tau``-integral
    uses the dyadic times up to ``t``.  The partial quantities for the probe are
    ``sup_x Q(x, t)^{1/q}`` maximized over times up to each cutoff, so a
    quantity growing with ``t`` shows up as divergence.
    """
    if not s < 0:
        raise RegimeError("the F_{inf,q} heat norm needs s < 0")
    tgrid = tgrid or TGrid()
    g = _zero_pad(f, pad_budget) if decays(f) else f
    eng = HeatEngine(g, "box")
    ells = _admitted(eng, tgrid, ball=1.0)
    spec = g.spec
    n = spec.n
    layers = []
    for ell in ells:
        t = 4.0 ** float(ell)
        _, vals = eng.evolve(t, 0)
        layers.append(np.abs(vals))
    per_t = np.empty(ells.size)
    if math.isinf(q):
        for i, ell in enumerate(ells):
            t = 4.0 ** float(ell)
            kern = _ball_kernel(spec, math.sqrt(t))
            best = 0.0
            for k in range(i + 1):
                tau = 4.0 ** float(ells[k])
                avg = sfft.ifftn(sfft.fftn(tau ** (-s / 2.0) * layers[k]) * kern).real
                best = max(best, float(avg.max()) * spec.cell * t ** (-n / 2.0))
            per_t[i] = best
    else:
        acc = np.zeros(spec.shape)
        for i, ell in enumerate(ells):
            t = 4.0 ** float(ell)
            acc = acc + LN4 * t ** (-s * q / 2.0) * layers[i] ** q
            kern = _ball_kernel(spec, math.sqrt(t))
            avg = sfft.ifftn(sfft.fftn(acc) * kern).real * spec.cell * t ** (-n / 2.0)
            per_t[i] = max(float(avg.max()), 0.0) ** (1.0 / q)
    partials = np.maximum.accumulate(per_t)
    rate = probe_partials(partials, "t", steps_per_unit=1.0)
    trunc = {"l_min": int(ells.min()), "l_max": int(ells.max()), "j_min": None, "j_max": None}
    tails = {"first_term": float(per_t[0]), "last_term": float(per_t[-1]), "box_L": spec.L}
    if _diverging(rate):
        return NormResult("diverging", None, rate, None, None, trunc, tails, per_t, ells)
    val = float(partials[-1])
    return NormResult("finite", val, rate, val, None, trunc, tails, per_t, ells)


def compound_norm(f: GridFunction, params: SpaceParams, tgrid: TGrid | None = None, *,
                  engine: str = "auto", m: int | None = None) -> NormResult:
    """Full heat norm for any covered regime (main term plus anchor term).

    ``m`` overrides the derivative order; any integer above ``s/2`` gives an
    equivalent norm.
    """
    if params.A == "B":
        return heat_b_norm(f, params, tgrid, engine=engine, m=m)
    if math.isinf(params.p):
        return f_infinity_norm(f, params.s, params.q, tgrid)
    return heat_f_norm(f, params, tgrid, engine=engine, m=m)


def divergence_probe(f: GridFunction, params: SpaceParams, growth_var: str = "t",
                     **kwargs) -> dict:
    """Growth descriptor of the partial norms in ``t`` (heat) or ``j`` (dyadic blocks)."""
    if growth_var == "t":
        return compound_norm(f, params, kwargs.get("tgrid")).rate
    if growth_var == "j":
        from .lpaley import default_partition, domestic_norm

        part = kwargs.get("part") or default_partition(f.spec)
        return domestic_norm(f, params, part).rate
    raise ValueError(f"growth variable must be 't' or 'j', got {growth_var!r}")
