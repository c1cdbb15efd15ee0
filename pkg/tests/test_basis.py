import math

import numpy as np
import pytest

from qdent.basis import (BasisSpec, QuadratureSpec, build_quadrature,
                         eval_ho_function, ho_table, kinetic_matrix,
                         quadrature_nodes, second_moment_matrix)
from helpers import ho_value_highprec

OMEGA = 0.25

# panel layout used by every solve at the engine defaults; the bare
# interval is too coarse for the highest basis oscillations, so accuracy
# statements are made on this grid
ATTACHED = QuadratureSpec().with_centers(8.0)


def test_ground_state_value_at_origin():
    assert eval_ho_function(0, 0.0, OMEGA) == pytest.approx(
        (OMEGA / math.pi) ** 0.25, rel=1e-12)


def test_odd_function_vanishes_at_origin():
    assert eval_ho_function(1, 0.0, OMEGA) == 0.0
    assert eval_ho_function(1, 0.0, 1.7) == 0.0


def test_high_order_value_matches_arbitrary_precision():
    got = eval_ho_function(50, 3.0, OMEGA)
    ref = ho_value_highprec(50, 3.0, OMEGA)
    assert got == pytest.approx(ref, rel=1e-10)


def test_rejects_non_finite_position():
    with pytest.raises(ValueError):
        ho_table(5, [0.0, np.nan], OMEGA)
    with pytest.raises(ValueError):
        eval_ho_function(3, np.inf, OMEGA)


def test_table_shape_and_column_convention():
    x = np.linspace(-1, 1, 7)
    tab = ho_table(6, x, OMEGA)
    assert tab.shape == (7, 6)
    for n in range(6):
        assert tab[:, n] == pytest.approx(eval_ho_function(n, x, OMEGA))


def test_parity_is_exact_in_floating_point():
    x = np.linspace(0.1, 40.0, 777)
    tab = ho_table(61, x, OMEGA)
    mirrored = ho_table(61, -x, OMEGA) * (-1.0) ** np.arange(61)
    assert np.array_equal(tab, mirrored)


def test_recurrence_stable_to_n60_over_full_interval():
    x = np.linspace(-40.0, 40.0, 4001)
    tab = ho_table(61, x, OMEGA)
    assert np.all(np.isfinite(tab))
    # normalized HO functions stay below unit amplitude
    assert np.abs(tab).max() <= 1.0 + 1e-12


def test_kinetic_single_function():
    spec = BasisSpec(n_basis=1, omega=OMEGA)
    assert kinetic_matrix(spec) == pytest.approx(np.array([[0.0625]]))


def test_kinetic_ladder_entries_omega_one():
    t = kinetic_matrix(BasisSpec(n_basis=3, omega=1.0))
    assert np.diag(t) == pytest.approx([0.25, 0.75, 1.25])
    assert t[0, 2] == pytest.approx(-math.sqrt(2.0) / 4.0)
    assert t[0, 1] == 0.0


def test_kinetic_matches_numerical_second_derivative():
    # five-point second derivative of the sampled functions, integrated on
    # the attached grid
    spec = BasisSpec(n_basis=10, omega=OMEGA, quadrature=ATTACHED)
    x, w = quadrature_nodes(ATTACHED)
    step = 1e-3
    tabs = [ho_table(10, x + k * step, OMEGA) for k in (-2, -1, 0, 1, 2)]
    d2 = (-tabs[4] + 16 * tabs[3] - 30 * tabs[2] + 16 * tabs[1] - tabs[0]) \
        / (12 * step ** 2)
    ref = tabs[2].T @ (w[:, None] * (-0.5 * d2))
    assert kinetic_matrix(spec) == pytest.approx(ref, abs=1e-8)


def test_kinetic_symmetric_positive_definite():
    t = kinetic_matrix(BasisSpec(n_basis=30, omega=OMEGA))
    assert np.array_equal(t, t.T)
    assert np.linalg.eigvalsh(t).min() > 0


def test_second_moment_analytic_entries():
    m = second_moment_matrix(BasisSpec(n_basis=6, omega=OMEGA))
    ns = np.arange(6)
    assert np.diag(m) == pytest.approx((2 * ns + 1) / (2 * OMEGA))
    assert m[1, 3] == pytest.approx(math.sqrt(2.0 * 3.0) / (2 * OMEGA))
    assert m[0, 1] == 0.0


def test_quadrature_example_integrals():
    quad = QuadratureSpec(nodes_per_panel=64).with_centers(8.0)
    x, w = quadrature_nodes(quad)
    tab = ho_table(50, x, OMEGA)
    assert np.sum(w * tab[:, 0] ** 2) == pytest.approx(1.0, abs=1e-12)
    assert np.sum(w * tab[:, 49] * tab[:, 48]) == pytest.approx(0.0, abs=1e-10)
    assert np.sum(w * tab[:, 0] ** 4) == pytest.approx(
        math.sqrt(OMEGA / (2 * math.pi)), abs=1e-12)


def test_gram_matrix_is_identity_on_solve_layout():
    spec = BasisSpec(n_basis=50, omega=OMEGA, quadrature=ATTACHED)
    x, w = quadrature_nodes(ATTACHED)
    tab = ho_table(50, x, OMEGA)
    gram = tab.T @ (w[:, None] * tab)
    assert np.abs(gram - np.eye(50)).max() < 1e-10
    assert spec.n_basis == 50


def test_quadrature_weights_cover_interval():
    quad = QuadratureSpec(breakpoints=(-8.0, 3.0), nodes_per_panel=40)
    x, w = build_quadrature(quad)
    assert x.size == 3 * 40
    assert np.all(w > 0)
    assert np.sum(w) == pytest.approx(80.0, rel=1e-14)
    assert np.all(np.diff(x) > 0)


def test_quadrature_grid_is_mirror_symmetric():
    quad = QuadratureSpec(breakpoints=(-8.0, 8.0))
    x, w = build_quadrature(quad)
    assert np.array_equal(x, -x[::-1])
    assert np.array_equal(w, w[::-1])


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(half_width=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(nodes_per_panel=1)
    with pytest.raises(ValueError):
        QuadratureSpec(breakpoints=(41.0,))
    with pytest.raises(ValueError):
        QuadratureSpec(breakpoints=(3.0, 3.0))


def test_with_centers_merges_and_sorts():
    quad = QuadratureSpec(breakpoints=(1.0,)).with_centers(8.0)
    assert quad.breakpoints == (-8.0, 1.0, 8.0)
    assert quad.with_centers(0.0) is quad


def test_basis_spec_validation():
    with pytest.raises(ValueError):
        BasisSpec(n_basis=0)
    with pytest.raises(ValueError):
        BasisSpec(omega=-0.25)
