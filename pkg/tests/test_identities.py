import dataclasses
import math

import numpy as np
import pytest

from betaflow import identities
from betaflow.identities import (MANIFEST, MIN_N, build_identity, check_identity, run_suite,
                                 simulate_sides)
from betaflow.models import ParameterError
from betaflow.rngdist import Beta, StreamKey
from betaflow.stats import ingest, ks_one_sample

ALPHA = 0.001


@pytest.mark.parametrize("name,params", [
    ("id_a1prime", {"model": "m2_dg", "w": 1.0, "y": 1.0, "z": 1.0}),
    ("id_a1doubleprime", {"model": "m1_t2", "z": 2.0, "p": 0.3}),
    ("id_perp", {"z": 1.0, "p": 0.5}),
    ("id_polya", {"b": 2.0, "w": 3.0}),
    ("id_randgam", {"y": 1.5}),
    ("id_randgam_exp", {}),
    ("id_asl_full", {}),
    ("id_asl_neg", {}),
    ("id_bga_prod", {"a": 1.5, "b": 0.5, "c": 2.0}),
    ("id_bga_gamma", {"a": 0.5, "b": 2.0}),
    ("id_gb4", {"w": 1.0, "y": 2.0}),
    ("id_dufresne", {"w": 1.5, "y": 0.5}),
])
def test_identity_holds(name, params):
    case = build_identity(name, params)
    assert check_identity(case, 100_000, ALPHA, StreamKey(7)).passed


def test_wrong_identity_is_rejected():
    case = build_identity("id_bga_prod", {"a": 1.0, "b": 1.0, "c": 1.0})
    wrong = dataclasses.replace(case, rhs_law=Beta(1.0, 2.4))
    assert not check_identity(wrong, 100_000, ALPHA, StreamKey(7)).passed


def test_suite_filter():
    reps = run_suite("id_asl*", n=MIN_N, seed=3)
    assert [r.test for r in reps] == ["id_asl_full", "id_asl_neg"]
    assert run_suite("no_such_identity*", n=MIN_N) == []
    reps = run_suite("id_perp(z=2,p=0.3)", n=MIN_N, seed=3)
    assert len(reps) == 1


def test_suite_deterministic_and_worker_free():
    one = run_suite("id_bga_*", n=MIN_N, seed=5, workers=1)
    four = run_suite("id_bga_*", n=MIN_N, seed=5, workers=4)
    assert one == four
    assert one != run_suite("id_bga_*", n=MIN_N, seed=6)


def test_manifest_labels_unique():
    labels = [build_identity(n, p).label for n, p in MANIFEST]
    assert len(labels) == len(set(labels)) == len(MANIFEST)


def test_minimum_size_and_errors():
    case = build_identity("id_asl_neg")
    with pytest.raises(ValueError):
        check_identity(case, MIN_N - 1, ALPHA, StreamKey(1))
    with pytest.raises(ParameterError):
        build_identity("id_nope")
    with pytest.raises(ParameterError):
        build_identity("id_polya", {"b": 1.0})
    with pytest.raises(ParameterError):
        build_identity("id_polya", {"b": -1.0, "w": 1.0})
    with pytest.raises(ParameterError):
        build_identity("id_a1prime", {"model": "cgz_classic", "p": 0.7})


def test_randgam_unit_shape_agrees_with_exponential_case():
    a = build_identity("id_randgam", {"y": 1.0})
    b = build_identity("id_randgam_exp")
    _, rhs = simulate_sides(a, 50_000, 1)
    lhs, _ = simulate_sides(b, 50_000, 1)
    from betaflow.stats import ks_two_sample
    assert ks_two_sample(ingest(rhs), ingest(lhs), ALPHA).passed


def test_urn_proportion_is_a_martingale():
    b, w, n = 2.0, 3.0, 100_000
    p = identities.urn(b, w, 50)(n, 11, {})
    mean = b / (b + w)
    var = b * w / ((b + w) ** 2 * (b + w + 1))
    assert abs(p.mean() - mean) < 5 * math.sqrt(var / n)


def test_urn_bias_shrinks_with_draws():
    # for shape 1/2 the finite urn misses limit mass near 0 of order N**-1/2
    d = []
    for n_draws in (20, 200, 2000):
        case = identities.id_polya_limit(0.5, 1.5, n_draws=n_draws)
        left, _ = simulate_sides(case, 100_000, 3)
        d.append(ks_one_sample(ingest(left), Beta(0.5, 1.5).cdf, ALPHA).statistic)
    assert d[0] > d[1] > d[2]


def test_scalar_generators():
    case = build_identity("id_dufresne", {"w": 1.0, "y": 1.0})
    key = StreamKey(2)
    x, y = case.lhs_gen(key), case.rhs_gen(key)
    assert x >= 0 and y >= 0 and key.counter == 2
    one = build_identity("id_asl_neg")
    assert 0 <= one.rhs_gen(StreamKey(2)) <= 1
