import math

import numpy as np
import pytest

from qdent.confinement import (PotentialParams, classify_structure,
                               potential_value, range_derivative)


def test_value_between_merged_centers():
    # both centers at distance d contribute exp(-(d/R)^p) with R = d
    params = PotentialParams(v0=10.0, d=8.0, r_range=8.0, p_exponent=2.0)
    assert potential_value(params, 0.0) == pytest.approx(-20.0 * math.exp(-1.0),
                                                         rel=1e-12)


def test_depth_at_center_of_narrow_well():
    params = PotentialParams(v0=10.0, d=8.0, r_range=1.0, p_exponent=2.0)
    assert potential_value(params, 8.0) == pytest.approx(
        -10.0 * (1.0 + math.exp(-256.0)), rel=1e-12)
    assert potential_value(params, 8.0) == pytest.approx(-10.0, rel=1e-6)


def test_mirror_symmetry_is_exact():
    params = PotentialParams(r_range=3.6, p_exponent=7.0)
    x = np.linspace(0.0, 40.0, 1234)
    assert np.array_equal(potential_value(params, x),
                          potential_value(params, -x))


def test_bounds_and_decay():
    x = np.linspace(-40.0, 40.0, 2001)
    for r, p in ((5.0, 2.0), (3.6, 200.0)):
        params = PotentialParams(r_range=r, p_exponent=p)
        v = potential_value(params, x)
        # away from the wells both exponentials underflow to -0.0 for hard
        # walls, so strict negativity is only representable inside them
        assert np.all(v <= 0.0)
        inside = (np.abs(x - params.d) <= r) | (np.abs(x + params.d) <= r)
        assert np.all(v[inside] < 0.0)
        assert np.all(v >= -2.0 * params.v0)
        assert abs(potential_value(params, 40.0)) < 1e-12 * params.v0


def test_hard_wall_exponent_does_not_overflow():
    params = PotentialParams(r_range=3.6, p_exponent=200.0)
    v = potential_value(params, np.array([0.0, 8.0, 39.9]))
    assert np.all(np.isfinite(v))
    # inside the wall the profile is flat at full depth
    assert v[1] == pytest.approx(-10.0, rel=1e-12)


def test_depth_at_centers_increases_with_hardness():
    # V(d) = -v0 (1 + exp(-(2d/R)^p)); for R > 2d the inner-wall term grows
    # with p, pushing the value toward -2 v0
    r = 20.0
    vals = []
    for p in (2.0, 7.0, 50.0, 200.0):
        params = PotentialParams(r_range=r, p_exponent=p)
        got = potential_value(params, 8.0)
        direct = -10.0 * (1.0 + math.exp(-((16.0 / r) ** p)))
        assert got == pytest.approx(direct, rel=1e-12)
        vals.append(got)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(-20.0, rel=1e-6)


def test_range_derivative_matches_finite_difference():
    x = np.linspace(-15.0, 15.0, 301)
    for r, p in ((5.0, 2.0), (12.0, 7.0), (8.0, 1.0)):
        step = 1e-6 * r
        up = potential_value(PotentialParams(r_range=r + step, p_exponent=p), x)
        dn = potential_value(PotentialParams(r_range=r - step, p_exponent=p), x)
        fd = (up - dn) / (2 * step)
        got = range_derivative(PotentialParams(r_range=r, p_exponent=p), x)
        assert got == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_range_derivative_finite_at_hard_walls():
    params = PotentialParams(r_range=3.6, p_exponent=200.0)
    dv = range_derivative(params, np.linspace(-40.0, 40.0, 5001))
    assert np.all(np.isfinite(dv))
    assert np.all(dv <= 0.0)


def test_classification_representative_shapes():
    assert classify_structure(PotentialParams(r_range=3.6, p_exponent=200.0)) \
        == "double_dot"
    assert classify_structure(PotentialParams(r_range=12.0, p_exponent=7.0)) \
        == "core_shell"
    assert classify_structure(PotentialParams(r_range=25.0, p_exponent=2.0)) \
        == "single_dot"


def test_classification_band_edges():
    def lab(r, p):
        return classify_structure(PotentialParams(r_range=r, p_exponent=p))

    assert lab(7.0, 200.0) == "double_dot"
    assert lab(7.0, 1.0) == "double_dot"       # narrow R wins at any p
    assert lab(9.0, 2.5) == "core_shell"
    assert lab(16.0, 3.0) == "core_shell"
    assert lab(20.0, 7.0) == "core_shell"      # outer band needs p >= 7
    assert lab(30.0, 7.0) == "core_shell"
    assert lab(12.0, 2.0) == "single_dot"      # p <= 2 excluded from core band
    assert lab(20.0, 4.0) == "single_dot"
    assert lab(31.0, 7.0) == "intermediate"
    assert lab(8.0, 2.0) == "intermediate"
    assert lab(18.0, 5.0) == "intermediate"    # the unlisted gap stays unlabeled
    assert lab(10.0, 2.0) == "intermediate"


def test_classification_total_over_grid():
    labels = {"single_dot", "core_shell", "double_dot", "intermediate"}
    for r in np.linspace(0.1, 35.0, 36):
        for p in (1.0, 2.0, 4.0, 7.0, 50.0, 200.0):
            got = classify_structure(PotentialParams(r_range=r, p_exponent=p))
            assert got in labels


def test_params_validation():
    with pytest.raises(ValueError):
        PotentialParams(v0=0.0)
    with pytest.raises(ValueError):
        PotentialParams(d=-1.0)
    with pytest.raises(ValueError):
        PotentialParams(r_range=0.0)
    with pytest.raises(ValueError):
        PotentialParams(p_exponent=0.5)


def test_rejects_non_finite_position():
    with pytest.raises(ValueError):
        potential_value(PotentialParams(), np.array([1.0, np.inf]))
