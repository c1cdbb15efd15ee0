"""Two interacting electrons in tunable double-well confinement.

Exact diagonalization in a harmonic-oscillator product basis, with energy,
Coulomb repulsion, and spatial-entanglement observables plus sweep and
validation tooling on top.
"""

__version__ = "0.1.0"

from .basis import BasisSpec, QuadratureSpec
from .confinement import PotentialParams, classify_structure, potential_value
from .assembly import assemble
from .entanglement import entropy_of_state
from .errors import ConvergenceError, NumericalError
from .interactions import CONTACT, SOFT_COULOMB, coulomb_expectation, factorization
from .spectral import GroundStateSolution, solve_ground

__all__ = [
    "BasisSpec", "QuadratureSpec", "PotentialParams", "classify_structure",
    "potential_value", "assemble", "entropy_of_state", "ConvergenceError",
    "NumericalError", "CONTACT", "SOFT_COULOMB", "coulomb_expectation",
    "factorization", "GroundStateSolution", "solve_ground", "__version__",
]
