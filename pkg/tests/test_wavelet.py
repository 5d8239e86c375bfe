import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homspace.grid import GridError, NonPowerOfTwo, TestFunction, build_grid, catalog_sample, lp_norm
from homspace.spacenorm import SpaceParams, compound_norm
from homspace.wavelet import (WaveletExpansion, WaveletSystem, analyze, best_kterm_bruteforce,
                              greedy_approximate, greedy_errors, kterm_family, kterm_rate, seq_mode,
                              seq_norm, series_expansion, series_terms, synthesize, unit_wavelet)

inf = math.inf
LINE = build_grid(1, 1024, 32.0)
PLANE = build_grid(2, 64, 4.0)
SYS1 = WaveletSystem(LINE, -0.5)
SYS2 = WaveletSystem(PLANE, -1.0)


def _only(exp, j, G, m):
    keys, vals = exp.flat()
    target = exp.copy()
    target.set(j, G, m, 0.0)
    return exp.get(j, G, m), np.abs(target.flat()[1]).max()


def test_system_validation():
    with pytest.raises(GridError):
        WaveletSystem(LINE, 0.0)
    with pytest.raises(GridError):
        WaveletSystem(LINE, -0.5, levels=99)
    with pytest.raises(NonPowerOfTwo):
        WaveletSystem(build_grid(1, 1024, 24.0), -0.5)
    assert SYS1.filter_length == 12 and SYS1.j_max == 3
    assert SYS2.types == ["FM", "MF", "MM"]


def test_vanishing_moments():
    spec = build_grid(1, 4096, 32.0)
    sys = WaveletSystem(spec, -0.5)
    psi = unit_wavelet(sys, 0, "M", [0]).values.real
    x = spec.axis
    scale = np.abs(psi).sum() * spec.h
    for v in range(sys.order):
        assert abs(np.sum(psi * x ** v) * spec.h) < 1e-6 * scale * (1 + 6.0 ** v)


@pytest.mark.parametrize("j,m", [(0, 0), (1, 3), (-2, -1)])
def test_compact_support(j, m):
    w = unit_wavelet(SYS1, j, "M", [m]).values
    lo, hi = SYS1.support(j, m)
    x = LINE.axis
    assert np.max(np.abs(w[(x < lo - LINE.h) | (x > hi)])) < 1e-12 * np.abs(w).max()


@given(st.integers(-2, 3), st.integers(-20, 20))
def test_biorthonormal_line(j, m):
    c, rest = _only(analyze(unit_wavelet(SYS1, j, "M", [m]), SYS1), j, "M", [m])
    assert abs(c - 1) < 1e-8 and rest < 1e-8


@given(st.integers(SYS2.j_min, SYS2.j_max), st.sampled_from(["FM", "MF", "MM"]), st.integers(-4, 4), st.integers(-4, 4))
def test_biorthonormal_plane(j, G, m1, m2):
    c, rest = _only(analyze(unit_wavelet(SYS2, j, G, [m1, m2]), SYS2), j, G, [m1, m2])
    assert abs(c - 1) < 1e-8 and rest < 1e-8


def test_wavelet_l2_normalisation():
    # ||Psi||_2^2 = 2^{-j(n+2r)}
    for j in (-1, 0, 2):
        w = unit_wavelet(SYS1.with_r(-0.25), j, "M", [0])
        assert lp_norm(w, 2) ** 2 == pytest.approx(2.0 ** (-j * 0.5), rel=1e-10)


def test_zero_function():
    exp = analyze(catalog_sample(TestFunction.constant(0.0), LINE), SYS1)
    assert exp.nnz() == 0 and list(exp.items()) == []


def test_gaussian_reconstruction(gauss):
    exp = analyze(gauss, SYS1)
    back = synthesize(exp)
    err = np.sqrt(np.sum(np.abs(back.values - gauss.values) ** 2) * LINE.h)
    assert err / lp_norm(gauss, 2) < 1e-6
    per_level = [np.abs(exp.bands[(j, "M")]).max() for j in range(SYS1.j_min, SYS1.j_max + 1)]
    top = int(np.argmax(per_level))
    assert all(a > b for a, b in zip(per_level[top:], per_level[top + 1:]))


def _random_sparse(system, seed, K=10):
    rng = np.random.default_rng(seed)
    exp = WaveletExpansion.empty(system)
    _, vals = exp.flat()
    pos = rng.choice(vals.size, size=K, replace=False)
    vals[pos] = rng.standard_normal(K)
    return exp.from_flat(vals)


@given(st.integers(0, 2 ** 20), st.floats(-5, 5))
def test_synthesis_round_trip_and_linearity(seed, a):
    exp = _random_sparse(SYS1, seed)
    back = analyze(synthesize(exp), SYS1)
    assert np.max(np.abs(back.flat()[1] - exp.flat()[1])) < 1e-8
    lhs = synthesize(exp.scaled(a)).values
    assert np.max(np.abs(lhs - a * synthesize(exp).values)) <= 1e-12 * (1 + np.abs(lhs).max())


def test_weak_l1_harmonic():
    exp = WaveletExpansion.empty(SYS1)
    _, vals = exp.flat()
    vals[:50] = 1.0 / np.arange(1, 51)
    assert seq_norm(exp.from_flat(vals), None, "weak_l1") == pytest.approx(1.0)


@pytest.mark.parametrize("p,q,s", [(1, 1, 0.5), (2, inf, 0.0), (4, 2, 0.0), (inf, inf, -0.5), (2, 0.5, 0.0)])
def test_single_unit_coefficient(p, q, s):
    params = SpaceParams("B", p, q, s)
    sys = SYS1.with_r(params.order)
    exp = WaveletExpansion.empty(sys)
    exp.set(1, "M", [3], 1.0)
    assert seq_norm(exp, params, "b") == pytest.approx(1.0)
    if math.isfinite(p):
        assert seq_norm(exp, params, "f") == pytest.approx(1.0)


@given(st.integers(0, 2 ** 20), st.sampled_from([1.0, 2.0, 3.0]))
def test_b_equals_f_at_p_equals_q(seed, p):
    params = SpaceParams("B", p, p, 0.25)
    exp = _random_sparse(SYS1.with_r(params.order), seed, 30)
    assert seq_norm(exp, params, "b") == pytest.approx(seq_norm(exp, params, "f"), rel=1e-10)


def test_seq_norm_errors():
    exp = WaveletExpansion.empty(SYS1)
    with pytest.raises(GridError):
        seq_norm(exp, SpaceParams("B", 2, 2, 0.25), "b")  # r mismatch
    with pytest.raises(GridError):
        seq_norm(exp, SpaceParams("B", inf, 2, -0.5), "f")
    with pytest.raises(GridError):
        seq_norm(exp, None, "b")


def test_greedy_keeps_largest():
    exp = WaveletExpansion.empty(SYS1)
    for m, v in zip([0, 1, 2], [1.0, 3.0, 2.0]):
        exp.set(0, "M", [m], v)
    kept, tail = greedy_approximate(exp, 2)
    assert sorted(abs(c) for *_, c in kept.items()) == [2.0, 3.0]
    assert [abs(c) for *_, c in tail.items()] == [1.0]
    kept, tail = greedy_approximate(exp, 5)
    assert tail.nnz() == 0 and kept.nnz() == 3
    with pytest.raises(GridError):
        greedy_approximate(exp, -1)


def test_greedy_ties_lexicographic():
    exp = WaveletExpansion.empty(SYS1)
    exp.set(1, "M", [0], 1.0)
    exp.set(0, "M", [5], 1.0)
    kept, _ = greedy_approximate(exp, 1)
    assert [(j, m) for j, _, m, _ in kept.items()] == [(0, (5,))]


@given(st.integers(0, 2 ** 20))
def test_greedy_error_monotone(seed):
    dst = SpaceParams("F", 2, 1, 0.0)
    exp = _random_sparse(SYS1.with_r(dst.order), seed, 20)
    errs = greedy_errors(exp, dst, range(21))
    assert np.all(np.diff(errs) <= 1e-12) and errs[-1] == 0


@given(st.integers(0, 2 ** 20), st.integers(1, 6))
def test_greedy_near_best(seed, k):
    dst = SpaceParams("F", 2, 1, 0.0)
    exp = _random_sparse(SYS1.with_r(dst.order), seed, 9)
    greedy = greedy_errors(exp, dst, [k])[0]
    best = best_kterm_bruteforce(exp, k, dst)
    assert greedy <= 2 * best + 1e-15


def test_bruteforce_limit():
    dst = SpaceParams("F", 2, 1, 0.0)
    with pytest.raises(GridError):
        best_kterm_bruteforce(_random_sparse(SYS1.with_r(-0.5), 1, 13), 2, dst)


def test_equal_magnitudes_plateau_then_drop():
    src, dst = SpaceParams("F", 1, 1, 0.5), SpaceParams("F", 2, 2, 0.0)
    exp = series_expansion(TestFunction.wavelet_series(3, 40, 0.0), LINE, -0.5)
    errs = greedy_errors(exp, dst, [0, 10, 20, 30, 39, 40])
    assert np.all(errs[:-1] > 0) and errs[-1] == 0
    # dropped tails of equal coefficients: error ~ sqrt(remaining)
    assert errs[1] / errs[3] == pytest.approx(math.sqrt(30 / 10), rel=0.2)


@pytest.mark.parametrize("p1,want", [(2.0, -0.5), (inf, -1.0)])
def test_kterm_rate_small(p1, want):
    src = SpaceParams("F", 1, 1, 0.5)
    dst = SpaceParams("B", p1, p1 if p1 < inf else inf, -0.5 + 1 / p1)
    fam = kterm_family(6, seed=11)
    spec = build_grid(1, 4096, 128.0)
    rate = kterm_rate(fam, src, dst, np.unique(np.geomspace(8, 128, 8).astype(int)), spec)
    assert rate["slope"] == pytest.approx(want, abs=0.15)
    with pytest.raises(GridError):
        kterm_rate(fam, dst, src, [8], spec)


def test_csv_round_trip(tmp_path):
    exp = _random_sparse(SYS1, 4)
    path = tmp_path / "c.csv"
    exp.to_csv(path)
    back = WaveletExpansion.from_csv(path, SYS1)
    assert np.array_equal(back.flat()[1], exp.flat()[1])


def test_series_coefficients_converge():
    # catalog series use fine cascade samples; a grid's own filter bank sees them
    # as its wavelets up to the cascade error, which shrinks as h does
    tf = TestFunction.wavelet_series(5, 6)
    terms = series_terms(tf, 1)
    assert len(terms) == 6
    assert sum(abs(lam) for *_, lam in terms) == pytest.approx(1.0)
    errs = []
    for N in (1 << 12, 1 << 14, 1 << 16):
        spec = build_grid(1, N, 32.0)
        exp = analyze(catalog_sample(tf, spec), WaveletSystem(spec, -0.5))
        errs.append(max(abs(exp.get(j, G, m) - lam) for j, G, m, lam in terms))
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3


def test_series_lattice_limit():
    with pytest.raises(NonPowerOfTwo):
        catalog_sample(TestFunction.wavelet_series(5, 6), build_grid(1, 1 << 18, 32.0))


def test_series_plane_single_term_is_separable():
    f = catalog_sample(TestFunction.wavelet_series(1, 1), build_grid(2, 256, 32.0))
    sv = np.linalg.svd(f.values.real, compute_uv=False)
    assert sv[1] < 1e-12 * sv[0]
    assert np.all(f.values[np.abs(f.spec.coords()[0]) > 16.0] == 0)


def test_sequence_vs_heat_spread():
    params = SpaceParams("B", 2, 2, -0.25)
    spec = build_grid(1, 2048, 32.0)
    sys = WaveletSystem(spec, params.order)
    ratios = []
    for tf in [TestFunction.gaussian(), TestFunction.bump(), TestFunction.wavelet_series(0, 8),
               TestFunction.wavelet_series(1, 8)]:
        f = catalog_sample(tf, spec)
        ratios.append(seq_norm(analyze(f, sys), params, seq_mode(params)) / compound_norm(f, params).value)
    assert max(ratios) / min(ratios) < 20
