"""Real-space grid oracle: convergence order, cross-path agreement."""

from pathlib import Path

import numpy as np
import pytest

import qdent.oracle
from qdent.assembly import assemble
from qdent.basis import BasisSpec
from qdent.confinement import PotentialParams
from qdent.entanglement import entropy_of_state
from qdent.oracle import GridOracleSpec, oracle_ground, richardson_energy
from qdent.spectral import solve_ground

OMEGA = 0.25


def harmonic(x):
    return 0.5 * OMEGA ** 2 * x ** 2


def test_harmonic_limit_converges_second_order():
    # two noninteracting particles in the basis oscillator: E = omega
    errs = {}
    for m in (101, 201):
        res = oracle_ground(GridOracleSpec(points=m, kind="none"), harmonic)
        errs[m] = abs(res.energy - OMEGA)
    assert errs[201] < 2e-4
    assert 3.5 < errs[101] / errs[201] < 4.5


def test_harmonic_product_state_is_unentangled():
    res = oracle_ground(GridOracleSpec(points=101, kind="none"), harmonic)
    assert abs(res.linear_entropy) < 1e-12


def test_richardson_removes_stencil_error():
    ext, coarse, fine = richardson_energy(
        GridOracleSpec(points=101, kind="none"), harmonic)
    assert abs(fine - OMEGA) < abs(coarse - OMEGA)
    assert abs(ext - OMEGA) < 1e-5


@pytest.mark.parametrize("r,p", [(3.0, 2.0), (5.0, 2.0), (4.0, 7.0)])
def test_contact_checkpoints_against_basis_solver(r, p):
    # smooth wells, so the extrapolated grid energy is trustworthy; hard
    # walls would leave an h-dependent boundary layer the extrapolation
    # cannot remove
    params = PotentialParams(r_range=r, p_exponent=p)
    ext, _, _ = richardson_energy(GridOracleSpec(params=params))
    sol = solve_ground(assemble(BasisSpec(), params))
    assert abs(ext - sol.energy) < 1e-3


def test_plateau_checkpoint_energy_and_entropy():
    params = PotentialParams(r_range=3.6, p_exponent=200.0)
    res = oracle_ground(GridOracleSpec(params=params))
    sol = solve_ground(assemble(BasisSpec(), params))
    ent = entropy_of_state(sol.coeff_matrix).linear_entropy
    assert res.energy == pytest.approx(sol.energy, rel=0.0, abs=1e-2)
    assert res.linear_entropy == pytest.approx(ent, rel=0.0, abs=1e-2)


def test_grid_state_symmetry_and_normalization():
    res = oracle_ground(GridOracleSpec(points=101, kind="none"), harmonic)
    assert np.array_equal(res.psi, res.psi.T)
    m = res.psi.shape[0]
    h = GridOracleSpec(points=101).spacing
    w = np.full(m, h)
    w[0] = w[-1] = h / 2.0
    sw = np.sqrt(w)
    nrm = np.linalg.norm(sw[:, None] * res.psi * sw[None, :])
    assert nrm == pytest.approx(1.0, rel=0.0, abs=1e-10)


def test_spec_validation():
    with pytest.raises(ValueError, match="odd"):
        GridOracleSpec(points=200)
    with pytest.raises(ValueError, match="odd"):
        GridOracleSpec(points=403)
    with pytest.raises(ValueError, match="half_width"):
        GridOracleSpec(half_width=0.0)
    with pytest.raises(ValueError, match="unknown interaction"):
        GridOracleSpec(kind="dipole")
    with pytest.raises(ValueError, match="params required"):
        oracle_ground(GridOracleSpec(points=11, kind="none"))


def test_richardson_refinement_cap():
    with pytest.raises(ValueError, match="cap"):
        richardson_energy(GridOracleSpec(points=251, kind="none"), harmonic)


def test_oracle_does_not_import_the_basis_machinery():
    # the cross-check only counts if this module cannot see the code it
    # checks
    source = Path(qdent.oracle.__file__).read_text()
    for mod in ("basis", "assembly", "interactions", "spectral",
                "entanglement", "observables", "sweep", "cli"):
        assert f"from .{mod}" not in source
        assert f"from qdent.{mod}" not in source
    assert "from .confinement" in source
