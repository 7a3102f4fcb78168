import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from betaflow import ifs
from betaflow.ifs import (ConvergenceError, DriftError, PreconditionError, SchemeClass, StochMat2,
                          mu_point, mu_product)
from betaflow.models import CATALOG, DEFAULT_PARAMS, build_case
from betaflow.rngdist import Beta, PointMass, StreamKey, Uniform
from betaflow.stats import ingest, ks_one_sample, ks_two_sample

unit = st.floats(0.0, 1.0)
ALPHA = 0.001


def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


# ---------------------------------------------------------------- apply_f

def test_apply_f_examples():
    for x in (0.0, 0.3, 1.0):
        assert ifs.apply_f(1.0, 0.0, x) == x
    assert ifs.apply_f(0.6, 0.2, 0.0) == 0.2
    assert ifs.apply_f(0.6, 0.2, 1.0) == 0.6
    assert ifs.apply_f(0.6, 0.2, 0.5) == pytest.approx(0.4, abs=1e-16)


@given(unit, unit, unit)
def test_apply_f_stays_in_unit_interval(a, b, x):
    y = ifs.apply_f(a, b, x)
    assert 0.0 <= y <= 1.0
    assert min(a, b) - 1e-15 <= y <= max(a, b) + 1e-15


def test_apply_f_clamps_rounding_only():
    assert ifs.apply_f(1.0, 0.0, 1.0 + 1e-15) == 1.0
    with pytest.raises(DriftError):
        ifs.apply_f(1.0, 0.0, 1.0 + 1e-9)


# ---------------------------------------------------------------- forward

def test_forward_zero_steps():
    mu = build_case("m2_dg", {"w": 1, "y": 1, "z": 1}).mu
    assert ifs.forward_run(mu, 0.37, 0, StreamKey(1)) == 0.37


def test_forward_point_pair_fixed_point():
    mu = mu_point(0.7, 0.3)
    assert ifs.forward_run(mu, 0.0, 200, StreamKey(1)) == pytest.approx(0.5, abs=1e-14)


def test_forward_run_advances_key_and_matches_batch():
    mu = build_case("m1_t2", {"z": 2, "p": 0.3}).mu
    key = StreamKey(4, 3)
    x = ifs.forward_run(mu, 0.5, 50, key)
    assert key.counter > 0
    assert x == ifs.forward_samples(mu, 0.5, 50, 4, 4)[3]


def test_forward_independent_betas_reach_beta22():
    mu = build_case("m2_dg", {"w": 1, "y": 1, "z": 1}).mu
    x = ifs.forward_samples(mu, 0.5, 200, 100_000, 11)
    assert ks_one_sample(ingest(x), Beta(2, 2).cdf, ALPHA).passed


# ---------------------------------------------------------------- backward

def test_backward_point_pair():
    lim, st_ = ifs.backward_nest(mu_point(0.7, 0.3), StreamKey(1), tol=1e-12)
    assert lim == pytest.approx(0.5, abs=1e-12)
    assert st_.steps == math.ceil(math.log(1e-12) / math.log(0.4))
    assert abs(st_.alpha) <= 1e-12


def test_backward_identity_map_rejected():
    with pytest.raises(PreconditionError):
        ifs.backward_nest(mu_point(1.0, 0.0), StreamKey(1))
    with pytest.raises(PreconditionError):
        ifs.backward_samples(mu_point(1.0, 0.0), 10, 1)


def test_backward_step_cap():
    mu = build_case("m1_t2", {"z": 1, "p": 0.5}).mu
    with pytest.raises(ConvergenceError):
        ifs.backward_nest(mu, StreamKey(1), tol=1e-12, max_steps=3)


def test_backward_fixed_split_gives_uniform():
    mu = build_case("m1_t1", {"p": 0.3}).mu
    x = ifs.backward_samples(mu, 100_000, 12)
    assert ks_one_sample(ingest(x), uniform_cdf, ALPHA).passed


def test_backward_state_and_trace_agree():
    mu = build_case("m2_s24", {"w": 2, "y": 1}).mu
    lim, state = ifs.backward_nest(mu, StreamKey(3, 8))
    ends, pairs, _ = ifs.backward_trace(mu, StreamKey(3, 8), state.steps)
    e0, e1 = ends[-1]
    assert state.beta == e0 and state.beta + state.alpha == pytest.approx(e1, abs=1e-16)
    lo, hi = state.interval
    assert 0.0 <= lo <= lim <= hi <= 1.0


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_nested_intervals_and_contracting_slope(name):
    case = build_case(name, DEFAULT_PARAMS[name])
    for rep in range(20):
        ends, pairs, _ = ifs.backward_trace(case.mu, StreamKey(21, rep), 60)
        prev_lo, prev_hi, prev_w = 0.0, 1.0, 1.0
        for e0, e1 in ends:
            lo, hi = min(e0, e1), max(e0, e1)
            assert prev_lo <= lo <= hi <= prev_hi
            assert hi - lo <= prev_w
            prev_lo, prev_hi, prev_w = lo, hi, hi - lo


def test_backward_resolves_limits_near_zero():
    # Beta(0.1, 0.4) puts ~5% of its mass below 1e-12; the stop rule keeps
    # the width small relative to the lower endpoint there
    mu = build_case("m1_t2", {"z": 0.5, "p": 0.8}).mu
    seen = 0
    for rep in range(400):
        lim, state = ifs.backward_nest(mu, StreamKey(31, rep))
        lo, hi = state.interval
        assert hi - lo <= 1e-12
        if lo > 0 and lo < 1e-9:
            seen += 1
            assert hi - lo <= 1e-6 * lo
    assert seen > 0


def test_fixed_n_forward_equals_backward_in_law():
    mu = build_case("m1_t3", {"y": 2, "z": 0.7}).mu
    for n in (1, 3, 10):
        fw = ifs.forward_samples(mu, 0.3, n, 20_000, 40 + n)
        bw = ifs.backward_at(mu, 0.3, n, 20_000, 80 + n)
        assert ks_two_sample(ingest(fw), ingest(bw), ALPHA).passed


@pytest.mark.parametrize("name,params", [
    ("m1_t2", {"z": 2, "p": 0.3}), ("cgz_tent", {"z": 2}), ("m2_s24", {"w": 1, "y": 2}),
    ("m2_dg", {"w": 2, "y": 1, "z": 2}),
])
def test_rescaled_steps_are_iid(name, params):
    case = build_case(name, params)
    assert case.mu.m1 or case.mu.m3
    first, later = [], []
    for rep in range(8000):
        ends, _, _ = ifs.backward_trace(case.mu, StreamKey(55, rep), 5)
        rel = []
        for (p0, p1), (n0, n1) in zip(ends[:-1], ends[1:]):
            lo, w = min(p0, p1), abs(p1 - p0)
            rel.append(sorted(((n0 - lo) / w, (n1 - lo) / w)))
        first.append(rel[0])
        later.append(rel[4])
    first, later = np.array(first), np.array(later)
    for col in (0, 1):
        assert ks_two_sample(ingest(first[:, col]), ingest(later[:, col]), ALPHA).passed


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_duality_every_catalog_model(name):
    case = build_case(name, DEFAULT_PARAMS[name])
    s = 1000 + sorted(CATALOG).index(name)
    fw = ifs.forward_samples(case.mu, 0.5, 200, 50_000, s)
    bw = ifs.backward_samples(case.mu, 50_000, s + 500)
    # Bonferroni over the catalog keeps the family-wise false alarm near ALPHA
    assert ks_two_sample(ingest(fw), ingest(bw), ALPHA / len(CATALOG)).passed


# ---------------------------------------------------------------- gamma side

def test_gamma_zero_steps_and_precondition():
    mu = build_case("m2_dg", {"w": 1, "y": 1, "z": 1}).mu
    assert ifs.gamma_forward_run(mu, 2.0, 1.7, 0, StreamKey(1)) == 1.7
    with pytest.raises(PreconditionError):
        ifs.gamma_forward_run(mu_point(1.0, 0.5), 1.0, 1.0, 5, StreamKey(1))
    with pytest.raises(ValueError):
        ifs.gamma_forward_run(mu, 0.0, 1.0, 5, StreamKey(1))


def test_gamma_one_step_renewal():
    from betaflow.rngdist import Gamma
    x = ifs.gamma_forward_samples(mu_point(0.0, 1.0), 1.7, 5.0, 1, 50_000, 3)
    assert ks_one_sample(ingest(x), Gamma(1.7).cdf, ALPHA).passed


def test_gamma_chain_independent_betas_reach_gamma2():
    from betaflow.rngdist import Gamma
    mu = build_case("m2_dg", {"w": 1, "y": 1, "z": 1}).mu
    x = ifs.gamma_forward_samples(mu, 2.0, 1.0, 200, 100_000, 13)
    assert ks_one_sample(ingest(x), Gamma(2).cdf, ALPHA).passed


# ---------------------------------------------------------------- matrix products

def test_left_product_constant_factor():
    m = ifs.left_product_run(mu_point(0.7, 0.3), StreamKey(1))
    for v in (m.m11, m.m12, m.m21, m.m22):
        assert v == pytest.approx(0.5, abs=1e-12)


def test_left_product_single_factor_exact():
    mu = build_case("m2_dg", {"w": 2, "y": 1, "z": 3}).mu
    key = StreamKey(5)
    a, b = mu.sample(key.copy())
    m = ifs.left_product_n(mu, 1, key)
    assert (m.m11, m.m12, m.m21, m.m22) == (a, 1.0 - a, b, 1.0 - b)


def test_left_product_rank_one_and_law():
    mu = build_case("m1_t1", {"p": 0.5}).mu
    for rep in range(50):
        m = ifs.left_product_run(mu, StreamKey(6, rep), tol=1e-12)
        assert m.row_gap() <= 1e-12
        assert abs(m.m11 + m.m12 - 1) <= 1e-12 and abs(m.m21 + m.m22 - 1) <= 1e-12
    x = ifs.left_product_samples(mu, 100_000, 14)
    assert ks_one_sample(ingest(x), uniform_cdf, ALPHA).passed


def test_left_product_matches_backward_limit():
    mu = build_case("cgz_tent", {"z": 1.5}).mu
    for rep in range(50):
        lim, _ = ifs.backward_nest(mu, StreamKey(7, rep))
        m = ifs.left_product_run(mu, StreamKey(7, rep))
        assert m.m11 == pytest.approx(lim, abs=2e-12)


def test_stochmat_validation():
    StochMat2.factor(0.3, 0.9)
    with pytest.raises(ValueError):
        StochMat2(0.5, 0.6, 0.5, 0.5)
    with pytest.raises(ValueError):
        StochMat2(1.5, -0.5, 0.5, 0.5)


# ---------------------------------------------------------------- parallel chunks

def test_workers_do_not_change_samples():
    mu = build_case("m1_t5", {"z": 2}).mu
    for fn, args in ((ifs.forward_samples, (mu, 0.5, 50, 1001, 9)),
                     (ifs.backward_samples, (mu, 1001, 9)),
                     (ifs.gamma_forward_samples, (mu, 3.0, 1.0, 50, 1001, 9)),
                     (ifs.left_product_samples, (mu, 1001, 9))):
        one = fn(*args, workers=1)
        four = fn(*args, workers=4)
        assert np.array_equal(one, four)


# ---------------------------------------------------------------- flags and classes

def test_check_conditions_examples():
    s24 = build_case("m2_s24", {"w": 1, "y": 1}).mu
    rep = ifs.check_conditions(s24, 100_000, StreamKey(1))
    assert rep.ok and rep.observed["A<=B"] == 0

    liar = mu_product(PointMass(1.0), PointMass(0.0), satisfies_c1=True)
    rep = ifs.check_conditions(liar, 100, StreamKey(1))
    assert any(v.startswith("c1") for v in rep.violations)

    uu = mu_product(Uniform(), Uniform())
    assert ifs.check_conditions(uu, 10_000, StreamKey(1)).ok


def test_check_conditions_symmetry_flags():
    good = build_case("m2_dg", {"w": 1, "y": 1, "z": 1}).mu
    assert good.m2 and good.m3
    assert ifs.check_conditions(good, 20_000, StreamKey(2)).ok
    bad = mu_product(Beta(3, 1), Beta(3, 1), m3=True)
    assert any(v.startswith("m3") for v in ifs.check_conditions(bad, 20_000, StreamKey(2)).violations)
    with pytest.raises(ValueError):
        ifs.check_conditions(good, 0, StreamKey(2))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_declared_m1_never_violated(name):
    mu = build_case(name, DEFAULT_PARAMS[name]).mu
    A, B = mu.sample_many(20_000, 3)
    assert np.all((A >= 0) & (A <= 1) & (B >= 0) & (B <= 1))
    if mu.m1:
        assert np.all(A > B)


def test_scheme_class_roundtrip():
    c = SchemeClass.parse("<S_2, R_I | D_G>")
    assert (c.first_stage, c.n_intervals, c.stage2_rule, c.stage2_mode) == ("S", 2, "D", "G")
    assert SchemeClass.parse(str(c)) == c
    with pytest.raises(ValueError):
        SchemeClass("X", 2, "R", "I", "R", "I")
    with pytest.raises(ValueError):
        SchemeClass("S", 0, "R", "I", "R", "I")
