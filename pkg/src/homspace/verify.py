"""Numerical experiments that each exercise one inequality or scaling law.

Every check returns a :class:`VerdictReport`.  Constants are fitted and
reported, never compared with theoretical values; what is asserted is the
direction of an inequality, spreads of ratios, exact scaling exponents and
divergence classes.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import zeta

from .grid import (GridError, GridFunction, GridSpec, TestFunction, build_grid, catalog_sample,
                   decays, dilate, lp_norm)
from .heat import HeatEngine, HeatQuery, heat_evolve
from .lpaley import default_partition, domestic_norm, edge_exponents, ladder_block_norms
from .spacenorm import (NormResult, RegimeError, SpaceParams, _jsonable, _zero_pad, anchor_norm,
                        compound_norm, f_infinity_norm)
from .wavelet import (RESOLVED_GAP, WaveletSystem, analyze, kterm_family, kterm_rate, seq_mode, seq_norm,
                      unit_wavelet)


class HarnessError(ValueError):
    """A check was called outside the parameter pattern it is built for."""


@dataclass
class VerdictReport:
    check: str
    params: dict
    observed: dict
    tolerance: dict
    passed: bool
    runtime: float = field(default=0.0, compare=False)

    def to_dict(self, runtime: bool = False) -> dict:
        out = {"check": self.check, "params": self.params, "observed": self.observed,
               "tolerance": self.tolerance, "passed": bool(self.passed)}
        if runtime:
            out["runtime"] = self.runtime
        return _jsonable(out)

    def to_json(self, runtime: bool = False) -> str:
        return json.dumps(self.to_dict(runtime), sort_keys=True)


def reports_json(reports: Sequence[VerdictReport], runtime: bool = False) -> str:
    """JSON array ordered by check name; runtimes are left out unless asked for."""
    ordered = sorted(reports, key=lambda r: r.check)
    return json.dumps([r.to_dict(runtime) for r in ordered], sort_keys=True, indent=1)


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _label(f: GridFunction) -> str:
    return f.source.label if f.source is not None else "grid-data"


def norm_by_method(f: GridFunction, params: SpaceParams, method: str = "heat") -> NormResult:
    """Heat, dyadic-block or wavelet evaluation of one quasi-norm."""
    if method == "heat":
        return compound_norm(f, params)
    if method == "lpaley":
        return domestic_norm(f, params)
    if method == "wavelet":
        g = _zero_pad(f, 1 << 22, 8) if decays(f) else f
        exp = analyze(g, WaveletSystem(g.spec, params.order))
        v = seq_norm(exp, params, seq_mode(params))
        sysd = exp.system
        trunc = {"l_min": None, "l_max": None, "j_min": sysd.j_min, "j_max": sysd.j_max}
        return NormResult("finite", v, None, v, None, trunc, {})
    raise HarnessError(f"unknown method {method!r}")


def _finite_value(res: NormResult, what: str) -> float:
    if not res.finite:
        raise HarnessError(f"{what} diverges ({res.rate})")
    return float(res.value)


# --------------------------------------------------------------------------
# homogeneity


def check_homogeneity(f: GridFunction, params: SpaceParams, lambdas: Iterable[float] = (0.25, 0.5, 2, 4),
                      tol: float = 0.02, method: str = "heat") -> VerdictReport:
    """``norm(f(lam .)) / (lam^{s-n/p} norm(f))`` for dyadic ``lam``."""
    with _Clock() as clk:
        base = _finite_value(norm_by_method(f, params, method), "base norm")
        ratios = {}
        for lam in lambdas:
            res = norm_by_method(dilate(f, lam), params, method)
            ratios[f"{lam:g}"] = (res.value / (lam ** params.order * base)) if res.finite else None
        ok = all(r is not None and abs(r - 1.0) <= tol for r in ratios.values())
    return VerdictReport("homogeneity", {"f": _label(f), "space": params.to_dict(), "method": method,
                                         "grid": f.spec.to_dict()},
                         {"base": base, "ratios": ratios}, {"ratio": [1 - tol, 1 + tol]}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# equivalence of the three evaluations

METHODS = ("heat", "lpaley", "wavelet")


def smooth_catalog(spec: GridSpec) -> list[GridFunction]:
    """Three gaussians, three bumps and four sparse wavelet series."""
    tfs = ([TestFunction.gaussian(a) for a in (0.5, 1.0, 2.0)]
           + [TestFunction.bump(r) for r in (1.0, 1.5, 2.0)]
           + [TestFunction.wavelet_series(k, 8) for k in range(4)])
    return [catalog_sample(tf, spec) for tf in tfs]


def method_table(family: Sequence[GridFunction], params: SpaceParams,
                 methods: Sequence[str] = METHODS) -> dict:
    """Norms by each method and the spread of their ratios to the heat norm."""
    rows = []
    ratios = []
    for f in family:
        vals = {}
        for m in methods:
            res = norm_by_method(f, params, m)
            vals[m] = res.value if res.finite else None
        rows.append({"f": _label(f), **vals})
        base = vals[methods[0]]
        if base:
            ratios.extend(vals[m] / base for m in methods[1:] if vals[m] is not None)
    complete = all(r[m] is not None for r in rows for m in methods)
    spread = max(ratios) / min(ratios) if ratios and complete else math.inf
    return {"rows": rows, "spread": spread, "complete": complete}


def check_equivalence(params_list: Sequence[SpaceParams], n: int = 1, N: int = 2048, L: float = 32.0,
                      spread_max: float = 20.0, drift_tol: float = 0.10) -> VerdictReport:
    """Heat, dyadic-block and wavelet norms agree up to a bounded factor.

    The spread is measured on ``N`` and again on ``2N`` points over the
    same box; it must stay below ``spread_max`` and move by less than
    ``drift_tol``.
    """
    with _Clock() as clk:
        per = {}
        ok = True
        for prm in params_list:
            a = method_table(smooth_catalog(build_grid(n, N, L)), prm)
            b = method_table(smooth_catalog(build_grid(n, 2 * N, L)), prm)
            drift = abs(b["spread"] / a["spread"] - 1.0) if math.isfinite(a["spread"]) else math.inf
            per[prm.label] = {"spread": a["spread"], "spread_doubled": b["spread"], "drift": drift,
                              "rows": a["rows"]}
            ok &= a["spread"] <= spread_max and b["spread"] <= spread_max and drift <= drift_tol
    return VerdictReport("equivalence", {"spaces": [p.to_dict() for p in params_list], "n": n, "N": N, "L": L},
                         per, {"spread": spread_max, "drift": drift_tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# heat smoothing


def heat_flow(f: GridFunction, t: float, engine: HeatEngine | None = None) -> GridFunction:
    """``W_t f`` as a decaying grid function on a box that holds its spread."""
    engine = engine or HeatEngine(f)
    if not engine.free:
        raise HarnessError("heat_flow needs a decaying function")
    spec, vals = engine.evolve(t, 0)
    return _zero_pad(GridFunction(spec, vals), 1 << 40, 4)


def _smoothing_ratios(w: GridFunction, src: SpaceParams, dst: SpaceParams, d: float,
                      ts: Sequence[float], method: str = "heat") -> np.ndarray:
    if method == "heat":
        base = _finite_value(compound_norm(w, src), "source norm")
        eng = HeatEngine(w)
        flows = (compound_norm(heat_flow(w, t, eng), dst) for t in ts)
    elif method == "lpaley":
        # torus flow measured by dyadic blocks; suits kernels that do not decay
        base = _finite_value(domestic_norm(w, src), "source norm")
        flows = (domestic_norm(heat_evolve(w, HeatQuery(t)), dst) for t in ts)
    else:
        raise HarnessError(f"unknown method {method!r}")
    out = []
    for t, res in zip(ts, flows):
        out.append(t ** (d / 2.0) * res.value / base if res.finite else math.inf)
    return np.array(out)


def check_heat_smoothing(w: GridFunction, params: SpaceParams, d: float,
                         ells: Iterable[int] = range(-5, 6), lam: float = 2.0,
                         tol: float = 0.02, spread_tol: float | None = None,
                         method: str = "heat") -> VerdictReport:
    """``R(t) = t^{d/2} ||W_t w | s+d|| / ||w | s||`` over ``t = 4^l``.

    Also compares ``R`` for ``w(lam .)`` at ``t`` with ``R`` for ``w`` at
    ``lam^2 t``, which must agree since both sides scale alike.  With
    ``method="lpaley"`` the flow runs on the torus and both norms come from
    dyadic blocks.
    """
    n, p, s = params.n, params.p, params.s
    if not (1 < p < math.inf and n * (1 / p - 1) < s < 0 < s + d < n / p):
        raise HarnessError(f"smoothing needs 1<p<inf and n(1/p-1) < s < 0 < s+d < n/p, got s={s}, d={d}")
    dst = SpaceParams(params.A, p, params.q, s + d, n)
    ells = list(ells)
    ts = [4.0 ** l for l in ells]
    with _Clock() as clk:
        R = _smoothing_ratios(w, params, dst, d, ts, method)
        k = int(round(math.log(lam * lam, 4)))
        if not math.isclose(4.0 ** k, lam * lam):
            raise HarnessError("lam^2 must be a power of 4")
        wl = dilate(w, lam)
        shifted = [t for t, l in zip(ts, ells) if l + k in ells]
        Rl = _smoothing_ratios(wl, params, dst, d, shifted, method)
        ref = np.array([R[ells.index(l + k)] for l in ells if l + k in ells])
        rescale = Rl / ref
        sup = float(np.max(R))
        spread = float(np.max(R) / np.min(R))
        ok = math.isfinite(sup) and bool(np.all(np.abs(rescale - 1) <= tol))
        if spread_tol is not None:
            ok = ok and spread <= spread_tol
    obs = {"t": ts, "R": R.tolist(), "sup": sup, "spread": spread, "rescale": rescale.tolist()}
    return VerdictReport("heat_smoothing", {"w": _label(w), "space": params.to_dict(), "d": d, "lam": lam,
                                            "method": method, "grid": w.spec.to_dict()},
                         obs, {"rescale": tol, "spread": spread_tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# embeddings


def _embedding_pattern(src: SpaceParams, dst: SpaceParams, which: str) -> None:
    n = src.n
    if which == "i":
        ok = (math.isinf(src.p) and math.isinf(dst.p) and math.isclose(src.s, dst.s)
              and -n < src.s < 0 and src.q <= dst.q
              and not (src.A == "F" and dst.A == "B" and not math.isinf(dst.q)))
    elif which == "ii":
        ok = (src.A == "B" and math.isinf(src.q) and dst.A == "F" and math.isinf(dst.p)
              and -n < dst.s < 0 and math.isclose(src.s, dst.s + n / src.p) and src.p < math.inf)
    elif which == "iii":
        ok = math.isclose(src.order, dst.order) and src.p < dst.p and (
            (src.A == "B" and dst.A == "F" and src.q <= dst.p)
            or (src.A == "F" and dst.A == "B" and src.p <= dst.q))
    else:
        raise HarnessError(f"unknown embedding clause {which!r}")
    if not ok:
        raise HarnessError(f"{src.label} -> {dst.label} does not match clause {which}")


def check_embedding(family: Sequence[GridFunction], src: SpaceParams, dst: SpaceParams, which: str,
                    c_max: float = 50.0) -> VerdictReport:
    """``||f | dst|| <= C ||f | src||`` with one fitted ``C`` over the family."""
    _embedding_pattern(src, dst, which)
    with _Clock() as clk:
        rows = []
        for f in family:
            a = compound_norm(f, src)
            b = compound_norm(f, dst)
            if not a.finite:
                raise HarnessError(f"{_label(f)} is not in {src.label}")
            if a.value == 0:
                rows.append({"f": _label(f), "src": 0.0, "dst": b.value, "ratio": None})
                continue
            rows.append({"f": _label(f), "src": a.value, "dst": b.value if b.finite else None,
                         "ratio": b.value / a.value if b.finite else None})
        ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
        finite = all(r["dst"] is not None for r in rows)
        C = max(ratios) if ratios else 0.0
        spread = max(ratios) / min(ratios) if ratios and min(ratios) > 0 else None
        ok = finite and C <= c_max
    obs = {"rows": rows, "C": C, "spread": spread,
           "probe_sensitive": bool(math.isinf(dst.p) and dst.A == "F")}
    return VerdictReport(f"embedding_{which}", {"src": src.to_dict(), "dst": dst.to_dict()},
                         obs, {"C_max": c_max}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# Hardy


def hardy_lhs(f: GridFunction, weight_exp: float, power: float) -> float:
    """``int |x|^{weight_exp} |f(x)|^power dx`` on the grid, origin cell left out.

    In one dimension the missing origin contribution is restored with the
    generalized Euler-Maclaurin term ``-2 zeta(-weight_exp) h^{1+weight_exp} g(0)``.
    """
    spec = f.spec
    g = np.abs(f.physical().values) ** power
    r = spec.radius
    mask = r > 0
    total = float(np.sum(r[mask] ** weight_exp * g[mask]) * spec.cell)
    if weight_exp < 0 and spec.n == 1:
        a = -weight_exp
        g0 = float(g[~mask][0])
        total -= 2.0 * float(zeta(a)) * spec.h ** (1.0 - a) * g0
    return total


def _hardy_ratio(f: GridFunction, params: SpaceParams, variant: str) -> tuple[float, float, float]:
    n = params.n
    power = params.p if variant == "F" else params.q
    weight = power * (n / params.p - params.s) - n
    lhs = hardy_lhs(f, weight, power) ** (1.0 / power)
    rhs = _finite_value(compound_norm(f, params), "norm")
    return lhs, rhs, lhs / rhs


def check_hardy(family: Sequence[GridFunction], params: SpaceParams, lam: float = 2.0,
                tol: float = 0.03) -> VerdictReport:
    """Weighted ``L_p`` (or ``L_q``) bound by the space norm, and its dilation invariance."""
    n, p, s, q = params.n, params.p, params.s, params.q
    if not (params.sigma_p < s < n / p) or math.isinf(p):
        raise HarnessError(f"Hardy needs sigma_p < s < n/p and p < inf, got {params.label}")
    r = -n / params.order
    variant = params.A
    if variant == "B" and not q <= r:
        raise HarnessError(f"the B variant needs q <= r = {r}")
    with _Clock() as clk:
        rows = []
        for f in family:
            lhs, rhs, ratio = _hardy_ratio(f, params, variant)
            _, _, ratio_l = _hardy_ratio(dilate(f, lam), params, variant)
            rows.append({"f": _label(f), "lhs": lhs, "norm": rhs, "ratio": ratio,
                         "dilated_ratio": ratio_l, "invariance": ratio_l / ratio})
        C = max(row["ratio"] for row in rows)
        ok = all(abs(row["invariance"] - 1.0) <= tol for row in rows) and math.isfinite(C)
    return VerdictReport("hardy", {"space": params.to_dict(), "r": r, "lam": lam},
                         {"rows": rows, "C": C}, {"invariance": tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# multiplication algebra


def _algebra_line(params: SpaceParams) -> bool:
    if not math.isclose(params.s, params.n / params.p, rel_tol=1e-12):
        return False
    if params.A == "F":
        return params.p <= 1
    return params.p < math.inf and params.q <= 1


def check_algebra(f1: GridFunction, f2: GridFunction, params: SpaceParams, lam: float = 2.0,
                  tol: float = 0.03) -> VerdictReport:
    """``||f1 f2|| <= C ||f1|| ||f2||`` and dilation neutrality of ``C`` on ``s = n/p``."""
    if not _algebra_line(params):
        raise HarnessError(f"{params.label} is not on an algebra line")

    def constant(a: GridFunction, b: GridFunction) -> tuple[float, float, float]:
        prod = GridFunction(a.spec, a.physical().values * b.physical().values)
        na = _finite_value(compound_norm(a, params), "first factor")
        nb = _finite_value(compound_norm(b, params), "second factor")
        if na == 0 or nb == 0:
            return 0.0, na * nb, math.nan
        npd = _finite_value(compound_norm(prod, params), "product")
        return npd, na * nb, npd / (na * nb)

    with _Clock() as clk:
        lhs, rhs, C = constant(f1, f2)
        if math.isnan(C):
            obs = {"lhs": lhs, "rhs": rhs, "C": None}
            ok = lhs == 0.0
        else:
            lhs_l, rhs_l, C_l = constant(dilate(f1, lam), dilate(f2, lam))
            obs = {"lhs": lhs, "rhs": rhs, "C": C, "C_dilated": C_l, "neutrality": C_l / C}
            ok = abs(C_l / C - 1.0) <= tol
    return VerdictReport("algebra", {"f1": _label(f1), "f2": _label(f2), "space": params.to_dict(),
                                     "lam": lam}, obs, {"neutrality": tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# Gagliardo-Nirenberg


def gradient_l1(f: GridFunction) -> float:
    """``sum_l ||d f / d x_l||_1`` with spectral derivatives."""
    spec = f.spec
    fh = f.spectral().values
    total = 0.0
    for xi in spec.freqs():
        d = GridFunction(spec, 1j * xi * fh, "spectral").physical()
        total += lp_norm(d, 1.0)
    return total


@dataclass(frozen=True)
class GNVariant:
    """``lhs <= C prod rhs_i^{theta_i}``; each side is a callable on a grid function."""

    name: str
    lhs: Callable[[GridFunction], float]
    rhs: tuple[tuple[Callable[[GridFunction], float], float], ...]
    describe: dict


def _heat_value(params: SpaceParams) -> Callable[[GridFunction], float]:
    return lambda f: _finite_value(compound_norm(f, params), params.label)


def gn_variant(name: str, n: int = 1, **kw) -> GNVariant:
    """Ready-made exponent sets for the four supported inequalities.

    ``"two_integrability"``: ``F(p) <= F(p1)^{1-theta} F(p2)^theta`` with ``p1=1, p2=4,
    theta=1/2, r=-1/2``.  ``"anchor"``: ``F(p) <= F(p0)^{1-theta} C^r(theta)``
    with ``p0=1, theta=1/2, r=-1/2``.  ``"gradient"``: ``F^{l-n/p'}_{p,q} <=
    W^l_1^{1/p} C^{l-n}^{1/p'}`` with ``l=1``.  ``"l2_plane"``: ``L_2 <=
    grad-L_1^{1/2} C^{-1}^{1/2}`` in two dimensions.
    """
    if name == "two_integrability":
        r = kw.get("r", -0.5)
        p1, p2, th = kw.get("p1", 1.0), kw.get("p2", 4.0), kw.get("theta", 0.5)
        p = 1.0 / ((1 - th) / p1 + th / p2)
        s1, s2 = r + n / p1, r + n / p2
        s = (1 - th) * s1 + th * s2
        A = SpaceParams("F", p, p, s, n)
        A1, A2 = SpaceParams("F", p1, p1, s1, n), SpaceParams("F", p2, p2, s2, n)
        return GNVariant(name, _heat_value(A), ((_heat_value(A1), 1 - th), (_heat_value(A2), th)),
                         {"lhs": A.to_dict(), "rhs": [A1.to_dict(), A2.to_dict()], "theta": th})
    if name == "anchor":
        r = kw.get("r", -0.5)
        p0, th = kw.get("p0", 1.0), kw.get("theta", 0.5)
        s0 = r + n / p0
        p = p0 / (1 - th)
        s = (1 - th) * s0 + th * r
        A = SpaceParams("F", p, p, s, n)
        A0 = SpaceParams("F", p0, p0, s0, n)
        C = SpaceParams("B", math.inf, math.inf, r, n)
        return GNVariant(name, _heat_value(A), ((_heat_value(A0), 1 - th), (_heat_value(C), th)),
                         {"lhs": A.to_dict(), "rhs": [A0.to_dict(), C.to_dict()], "theta": th})
    if name == "gradient":
        l = 1
        if not n > l:
            raise HarnessError("the W^1_1 inequality needs n > 1")
        p = kw.get("p", 4.0 / 3.0)
        pp = p / (p - 1.0)
        A = SpaceParams("F", p, p, l - n / pp, n)
        C = SpaceParams("B", math.inf, math.inf, l - n, n)
        return GNVariant(name, _heat_value(A), ((gradient_l1, 1 / p), (_heat_value(C), 1 / pp)),
                         {"lhs": A.to_dict(), "rhs": ["grad-L1", C.to_dict()], "theta": 1 / pp})
    if name == "l2_plane":
        if n != 2:
            raise HarnessError("the L2 inequality is two-dimensional")
        C = SpaceParams("B", math.inf, math.inf, -1.0, 2)
        return GNVariant(name, lambda f: lp_norm(f.physical(), 2.0),
                         ((gradient_l1, 0.5), (_heat_value(C), 0.5)),
                         {"lhs": "L2", "rhs": ["grad-L1", C.to_dict()], "theta": 0.5})
    raise HarnessError(f"unknown Gagliardo-Nirenberg variant {name!r}")


def _gn_ratio(v: GNVariant, f: GridFunction) -> tuple[float, float]:
    lhs = v.lhs(f)
    rhs = 1.0
    for fn, th in v.rhs:
        rhs *= fn(f) ** th
    return lhs, rhs


def check_gn(family: Sequence[GridFunction], variant: GNVariant | str, lam: float = 2.0,
             tol: float = 0.03, spread_tol: float = 2.0) -> VerdictReport:
    """Multiplicative inequality with a fitted constant and its dilation invariance."""
    if isinstance(variant, str):
        variant = gn_variant(variant, family[0].spec.n if family else 1)
    with _Clock() as clk:
        rows = []
        for f in family:
            lhs, rhs = _gn_ratio(variant, f)
            if rhs == 0:
                rows.append({"f": _label(f), "lhs": lhs, "rhs": 0.0, "ratio": None})
                continue
            lhs_l, rhs_l = _gn_ratio(variant, dilate(f, lam))
            ratio, ratio_l = lhs / rhs, lhs_l / rhs_l
            rows.append({"f": _label(f), "lhs": lhs, "rhs": rhs, "ratio": ratio,
                         "invariance": ratio_l / ratio})
        ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
        C = max(ratios) if ratios else 0.0
        spread = max(ratios) / min(ratios) if ratios else 1.0
        ok = (all(r["lhs"] == 0 for r in rows if r["ratio"] is None)
              and all(abs(r["invariance"] - 1) <= tol for r in rows if r["ratio"] is not None)
              and spread <= spread_tol)
    return VerdictReport(f"gn_{variant.name}", {"variant": variant.describe, "lam": lam},
                         {"rows": rows, "C": C, "spread": spread},
                         {"invariance": tol, "spread": spread_tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# Riesz kernels


def riesz_sweep(n: int, p: float, sigma: float, qs=(1.0, 2.0, math.inf), families=("B", "F"),
                offsets=(-0.25, 0.0, 0.25)) -> list[SpaceParams]:
    s0 = n / p - sigma
    return [SpaceParams(A, p, q, s0 + ds, n) for A in families for q in qs for ds in offsets]


MIXED_POINTS = {2.0: (-0.45, 0.0, 0.45), 4.0: (-0.6, -0.25, 0.15)}


def mixed_sweep(n: int = 1, points: dict | None = None, qs=(1.0, 2.0, math.inf),
                families=("B", "F")) -> list[SpaceParams]:
    """Strip parameters ``(A, p, q, s)`` for the mixed kernel, away from ``s = n/p``."""
    points = MIXED_POINTS if points is None else points
    return [SpaceParams(A, p, q, s, n) for p, ss in points.items() for A in families
            for q in qs for s in ss]


def block_scaling(sigma: float, p: float, n: int = 1, N: int | None = None,
                  js: Sequence[int] | None = None, kappa: float | None = None) -> dict:
    """Consecutive block ``L_p`` ratios of a Riesz kernel against ``2^{sigma - n/p}``."""
    N = N or (1 << 16 if n == 1 else 1024)
    js = np.arange(-5, 7) if js is None else np.asarray(js)
    tf = TestFunction.riesz(sigma) if kappa is None else TestFunction.mixed_riesz(sigma, kappa)
    norms = ladder_block_norms(tf, n, N, js, p)
    ratios = norms[1:] / norms[:-1]
    expected = 2.0 ** (sigma - n / p)
    return {"j": js.tolist(), "norms": norms.tolist(), "ratios": ratios.tolist(), "expected": expected,
            "max_rel_error": float(np.max(np.abs(ratios / expected - 1)))}


def classify_riesz(sigma: float, kappa: float | None = None, sweep: Sequence[SpaceParams] | None = None,
                   n: int = 1, p: float = 4.0, N: int | None = None, L: float | None = None,
                   tol: float = 0.01, exp_tol: float = 0.10) -> VerdictReport:
    """Membership table of a (mixed) Riesz kernel from its dyadic blocks.

    Single kernels must be finite exactly at ``(B, q=inf, s = n/p - sigma)``
    and diverging elsewhere; mixed kernels must diverge everywhere, with the
    per-``j`` slopes at the two ends of the block range matching
    ``s + sigma - n/p`` (low end) and ``s + kappa - n/p`` (high end).
    """
    if not 0 < sigma < n or (kappa is not None and not sigma < kappa < n):
        raise HarnessError("need 0 < sigma < kappa < n")
    N = N or (1 << 16 if n == 1 else 1024)
    L = L or math.pi * 2.0 ** (8 if n == 1 else 4)
    if sweep is None:
        sweep = riesz_sweep(n, p, sigma) if kappa is None else mixed_sweep(n)
    sweep = list(sweep)
    with _Clock() as clk:
        spec = build_grid(n, N, L)
        tf = TestFunction.riesz(sigma) if kappa is None else TestFunction.mixed_riesz(sigma, kappa)
        g = catalog_sample(tf, spec)
        part = default_partition(spec)
        s0 = n / p - sigma
        table = []
        ok = True
        if math.isinf(p):
            sweep = [prm for prm in sweep if prm.A == "B"]
        for prm in sweep:
            res = domestic_norm(g, prm, part)
            row = {"space": prm.to_dict(), "verdict": res.verdict, "rate": res.rate}
            if kappa is None:
                expect = ("finite" if (prm.A == "B" and math.isinf(prm.q)
                                       and math.isclose(prm.s, s0, abs_tol=1e-12)) else "diverging")
            else:
                expect = "diverging"
            row["expected"] = expect
            ok &= res.verdict == expect
            table.append(row)
        obs = {"table": table}
        if kappa is None:
            scal = block_scaling(sigma, p, n, N if n == 1 else None)
            obs["block_scaling"] = scal
            ok &= scal["max_rel_error"] <= tol
            if math.isinf(p):
                anchor = anchor_norm(g, -sigma)
                probes = delta_checks(n, qs=(1.0, 2.0))["f_probes"]
                obs["sup_line"] = {"anchor": {"verdict": anchor.verdict, "value": anchor.value},
                                   "delta_f_probes": probes}
                ok &= anchor.finite and all(v["verdict"] == "diverging" for v in probes.values())
        else:
            js = np.arange(-14, 15)
            ladder_N = 1 << 14 if n == 1 else 1024
            norms = {}
            sides = []
            for prm in sweep:
                if prm.p not in norms:
                    norms[prm.p] = ladder_block_norms(tf, n, ladder_N, js, prm.p)
                terms = 2.0 ** (prm.s * js) * norms[prm.p]
                e = edge_exponents(terms, js)
                want = {"low": abs(prm.s + sigma - n / prm.p), "high": abs(prm.s + kappa - n / prm.p)}
                errs = {k: abs(abs(e[k]) - want[k]) / want[k] if want[k] > 0 else abs(e[k])
                        for k in e}
                sides.append({"space": prm.to_dict(), "measured": e, "expected": want, "rel_error": errs})
                ok &= max(errs.values()) <= exp_tol
            obs["one_sided"] = sides
    name = "riesz" if kappa is None else "mixed_riesz"
    return VerdictReport(name, {"sigma": sigma, "kappa": kappa, "n": n, "p": p,
                                "grid": spec.to_dict()},
                         obs, {"block_ratio": tol, "exponent": exp_tol}, ok, clk.elapsed)


def delta_checks(n: int = 1, N: int = 1024, L: float = 32.0, qs=(1.0, 2.0)) -> dict:
    """The delta witnesses: heat profile, the sup norm, and the F-type probes."""
    spec = build_grid(n, N, L)
    d = catalog_sample(TestFunction.delta(), spec)
    eng = HeatEngine(d)
    ells = np.arange(-2, 9)
    prof = []
    for l in ells:
        t = 4.0 ** float(l)
        sp, vals = eng.evolve(t, 0)
        prof.append(t ** (n / 2.0) * float(np.abs(vals).max()))
    prof = np.array(prof)
    target = (4 * math.pi) ** (-n / 2.0)
    sup = compound_norm(d, SpaceParams("B", math.inf, math.inf, -float(n), n))
    probes = {}
    for q in qs:
        r = f_infinity_norm(d, -float(n), q)
        probes[f"{q:g}"] = {"verdict": r.verdict, "value": r.value, "rate": r.rate}
    return {"t": (4.0 ** ells).tolist(), "profile": prof.tolist(), "target": target,
            "profile_spread": float(prof.max() / prof.min() - 1), "profile_error": float(np.max(np.abs(prof / target - 1))),
            "sup_norm": {"verdict": sup.verdict, "value": sup.value}, "f_probes": probes}


def constant_checks(n: int = 1, N: int = 1024, L: float = 32.0, ss=(-0.5, -1.0)) -> dict:
    spec = build_grid(n, N, L)
    c = catalog_sample(TestFunction.constant(), spec)
    out = {}
    for s in ss:
        r = compound_norm(c, SpaceParams("B", math.inf, math.inf, s, n))
        out[f"{s:g}"] = {"verdict": r.verdict, "rate": r.rate}
    return out


def check_delta(n: int = 1, tol: float = 0.01) -> VerdictReport:
    """Delta profile and membership, plus constants diverging in every tested ``C^s``."""
    with _Clock() as clk:
        obs = delta_checks(n)
        obs["constants"] = constant_checks(n)
        parts = {
            "profile_constant": obs["profile_spread"] <= tol,
            "profile_value": obs["profile_error"] <= tol,
            "sup_finite": obs["sup_norm"]["verdict"] == "finite",
            "f_probes_diverge": all(v["verdict"] == "diverging" for v in obs["f_probes"].values()),
            "constants_diverge": all(v["verdict"] == "diverging" for v in obs["constants"].values()),
        }
        obs["parts"] = parts
    return VerdictReport("delta", {"n": n}, obs, {"profile": tol}, all(parts.values()), clk.elapsed)


# --------------------------------------------------------------------------
# k-term approximation


def check_kterm(p0: float = 1.0, p1: float = 2.0, r: float = -0.5, count: int = 20, seed: int = 7,
                ks: Sequence[int] | None = None, N: int = 4096, tol: float = 0.1) -> VerdictReport:
    """Greedy error slope over a flat sparse family against ``1/p1 - 1/p0``."""
    n = 1
    ks = np.unique(np.round(np.geomspace(8, 512, 15)).astype(int)) if ks is None else np.asarray(ks)
    src = SpaceParams("F", p0, p0, r + n / p0, n)
    dst = (SpaceParams("B", math.inf, math.inf, r, n) if math.isinf(p1)
           else SpaceParams("F", p1, p1, r + n / p1, n))
    with _Clock() as clk:
        spec = build_grid(n, N, N / 32.0)
        fam = kterm_family(count, seed)
        rate = kterm_rate(fam, src, dst, ks, spec)
        ok = abs(rate["slope"] - rate["expected"]) <= tol
    return VerdictReport("kterm", {"p0": p0, "p1": p1, "r": r, "count": count, "seed": seed,
                                   "grid": spec.to_dict()},
                         rate, {"slope": tol}, ok, clk.elapsed)


# --------------------------------------------------------------------------
# non-compactness


def noncompact_witness(src: SpaceParams, dst: SpaceParams, count: int, N: int = 1 << 15,
                       L: float = 2.0, spread_tol: float = 3.0, sep_min: float = 0.5) -> VerdictReport:
    """Wavelets at ``count`` distinct levels inside the unit cube.

    Their ``src`` norms stay within a bounded band while the pairwise ``dst``
    distances, after normalizing each wavelet in ``src``, stay away from 0.
    The separation is measured relative to the larger of the two ``dst``
    norms, which removes the normalization constant of the heat norm.
    """
    n = src.n
    if not math.isclose(src.order, dst.order):
        raise HarnessError("source and target need the same r = s - n/p")
    spec = build_grid(n, N, L)
    system = WaveletSystem(spec, src.order)
    m0 = system.filter_length // 2 - 1
    # levels whose wavelet at position m0 fits in [0,1)^n and is resolved, coarsest first
    top = system.j_max - RESOLVED_GAP
    levels = [j for j in range(system.j_min, top + 1) if system.support(j, m0)[1] <= 1.0]
    if count > len(levels):
        raise HarnessError(f"only {len(levels)} levels fit in the unit cube on this grid")
    levels = levels[:count]
    G = "M" * n
    with _Clock() as clk:
        fns = [unit_wavelet(system, j, G, (m0,) * n) for j in levels]
        src_norms = [_finite_value(compound_norm(f, src), "source norm") for f in fns]
        normed = [f * (1.0 / v) for f, v in zip(fns, src_norms)]
        dst_norms = [_finite_value(compound_norm(f, dst), "target norm") for f in normed]
        seps, rel = {}, {}
        for a, b in itertools.combinations(range(count), 2):
            diff = normed[a] + normed[b] * (-1.0)
            key = f"{levels[a]},{levels[b]}"
            seps[key] = _finite_value(compound_norm(diff, dst), "separation")
            rel[key] = seps[key] / max(dst_norms[a], dst_norms[b])
        spread = max(src_norms) / min(src_norms) if src_norms else 1.0
        smallest = min(rel.values()) if rel else None
        ok = spread <= spread_tol and (smallest is None or smallest >= sep_min)
    obs = {"levels": levels, "src_norms": src_norms, "dst_norms": dst_norms, "spread": spread,
           "separations": seps, "relative_separations": rel, "min_relative_separation": smallest}
    return VerdictReport("noncompact", {"src": src.to_dict(), "dst": dst.to_dict(), "count": count,
                                        "grid": spec.to_dict()},
                         obs, {"spread": spread_tol, "relative_separation": sep_min}, ok, clk.elapsed)
