"""Position-space views of a solved state and derived indicators.

The coefficient matrix is the real object of the calculation; this module
turns it back into Psi(x1, x2) on grids, extracts the diagonal and
antidiagonal cut densities |Psi(x, +/-x)|^2 and the origin density
|Psi(0,0)|^2, and provides the variance and force diagnostics the sweep
layer reports.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .assembly import attach_centers, attach_wells, potential_matrix
from .basis import ho_table, second_moment_matrix
from .confinement import range_derivative
from .entanglement import entropy_of_state
from .interactions import coulomb_expectation, factorization
from .spectral import GroundStateSolution


@dataclass
class WavefunctionGrid:
    axis: np.ndarray
    values: np.ndarray
    solution: GroundStateSolution


@dataclass
class CutProfile:
    positions: np.ndarray
    diag_density: np.ndarray
    antidiag_density: np.ndarray
    origin_density: float


def default_axis(half_width: float = 20.0, points: int = 801):
    return np.linspace(-half_width, half_width, points)


def _table(sol: GroundStateSolution, x):
    # rows are positions, columns basis functions
    return ho_table(sol.spec.n_basis, x, sol.spec.omega)


def evaluate_wavefunction(sol: GroundStateSolution, axis) -> WavefunctionGrid:
    """Psi(x1, x2) = sum_jk A_jk h_j(x1) h_k(x2) on a square grid."""
    axis = np.asarray(axis, dtype=float)
    lim = sol.spec.quadrature.half_width
    if axis.size == 0 or np.abs(axis).max() > lim:
        raise ValueError(f"axis must be non-empty and within +/-{lim}")
    tab = _table(sol, axis)
    return WavefunctionGrid(axis, tab @ sol.coeff_matrix @ tab.T, sol)


def origin_density(sol: GroundStateSolution) -> float:
    """|Psi(0,0)|^2 from the expansion itself, not a grid sample."""
    b0 = _table(sol, np.array([0.0]))[0]
    return float(b0 @ sol.coeff_matrix @ b0) ** 2


def cuts(sol: GroundStateSolution, axis) -> CutProfile:
    """Same-point and mirror-point densities along the given positions."""
    axis = np.asarray(axis, dtype=float)
    lim = sol.spec.quadrature.half_width
    if axis.size == 0 or np.abs(axis).max() > lim:
        raise ValueError(f"axis must be non-empty and within +/-{lim}")
    tp = _table(sol, axis)
    tm = _table(sol, -axis)
    diag = np.einsum("pi,ij,pj->p", tp, sol.coeff_matrix, tp)
    anti = np.einsum("pi,ij,pj->p", tp, sol.coeff_matrix, tm)
    return CutProfile(axis, diag ** 2, anti ** 2, origin_density(sol))


def coulomb_expectation_of(sol: GroundStateSolution) -> float:
    """<U> of a solved state, on the same panel layout the solve used."""
    fact = factorization(attach_centers(sol.spec, sol.params), sol.kind)
    return coulomb_expectation(sol.coeff_matrix, fact)


def contact_from_diagonal(profile: CutProfile) -> float:
    """Grid-integral route to the contact expectation, int |Psi(x,x)|^2 dx.

    Exists as an independent cross-check of the factorized coefficient-space
    value; accuracy is limited by the grid.
    """
    return float(simpson(profile.diag_density, x=profile.positions))


def mean_square_position(sol: GroundStateSolution) -> float:
    """Per-particle <x^2>, a cheap spatial-spread diagnostic."""
    rho = sol.coeff_matrix @ sol.coeff_matrix.T
    return float(np.sum(rho * second_moment_matrix(sol.spec)))


def hellmann_feynman_dR(sol: GroundStateSolution) -> float:
    """dE/dR as the expectation of the explicit R-derivative of the wells.

    Valid for eigenstates; the sweep layer compares it against finite
    differences of the energy.
    """
    spec = attach_wells(sol.spec, sol.params)
    dv = potential_matrix(spec, lambda x: range_derivative(sol.params, x))
    rho = sol.coeff_matrix @ sol.coeff_matrix.T
    return 2.0 * float(np.sum(rho * dv))


def origin_density_ordering(solutions):
    """Rank solved states by |Psi(0,0)|^2, descending.

    Returns (solution, origin_density, linear_entropy) triples; the entropy
    rides along so rankings can be compared against entanglement order.
    """
    if not solutions:
        raise ValueError("need at least one solution to rank")
    rows = [(s, origin_density(s), entropy_of_state(s.coeff_matrix).linear_entropy)
            for s in solutions]
    rows.sort(key=lambda row: row[1], reverse=True)
    return rows
