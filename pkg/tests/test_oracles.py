import math

import pytest

from oracles import FROZEN, hyp2f1_exact, mp_reference, simpson, tent_cdf


def test_frozen_values_rederive():
    pytest.importorskip("mpmath")
    ref = mp_reference()
    for k, v in FROZEN.items():
        assert abs(ref[k] - v) <= 1e-15 * max(1.0, abs(v)), k


def test_exact_series_matches_closed_form_for_degenerate_case():
    # 2F1(a, b; b; x) = (1 - x)^-a
    assert abs(float(hyp2f1_exact(2, 5, 5, 0.5, terms=200)) - 4.0) < 1e-15


def test_tent_cdf_oracle_is_integral_of_density():
    z = 2.5
    dens = lambda s: z * abs(1 - 2 * s) ** (z - 1)
    assert abs(simpson(dens, 0, 0.3) - tent_cdf(0.3, z)) < 1e-10
    assert math.isclose(tent_cdf(1.0, z), 1.0)
