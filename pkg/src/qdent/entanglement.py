"""Spatial entanglement of a symmetric two-particle state.

For a wavefunction expanded as Psi(x1, x2) = sum_jk A_jk h_j(x1) h_k(x2)
with A symmetric and Frobenius-normalized, the one-particle reduced density
matrix in the orbital basis is rho = A A^T.  Its eigenvalues are the Schmidt
weights, and the linear entropy L = 1 - Tr rho^2 = 1 - sum lam^2 measures
how far the state is from a single product of identical orbitals.

Everything here works in coefficient space; no quadrature error enters the
entropy itself.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .basis import BasisSpec, basis_values, quadrature_nodes
from .errors import NumericalError

# eigenvalues of rho may dip this far below zero from roundoff; anything
# lower means the input was not a valid reduced density matrix
NEGATIVE_EIGVAL_TOL = -1e-12


@dataclass
class EntanglementReport:
    linear_entropy: float
    schmidt_values: np.ndarray
    purity: float


def reduced_density(coeff_matrix):
    """rho = A A^T for a normalized coefficient matrix."""
    a = np.asarray(coeff_matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("coefficient matrix must be square")
    nrm = np.linalg.norm(a)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"coefficient matrix norm {nrm:.2e} is not 1")
    return a @ a.T


def linear_entropy(rho) -> EntanglementReport:
    """Linear entropy and Schmidt spectrum of a reduced density matrix."""
    rho = np.asarray(rho, dtype=float)
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-8:
        raise NumericalError(f"reduced density trace {tr!r} is not 1")
    lam = np.linalg.eigvalsh(rho)
    if lam.min() < NEGATIVE_EIGVAL_TOL:
        raise NumericalError(f"reduced density eigenvalue {lam.min():.3e} "
                             "below roundoff tolerance")
    lam = np.clip(lam, 0.0, None)[::-1].copy()
    purity = float(np.sum(lam ** 2))
    return EntanglementReport(1.0 - purity, lam, purity)


def entropy_of_state(coeff_matrix) -> EntanglementReport:
    return linear_entropy(reduced_density(coeff_matrix))


# -- reference states with known entropy -----------------------------------

FACTORIZED_GAUSSIAN = "factorized_gaussian"
TRIPLET_GAUSSIAN = "triplet_gaussian"


@dataclass(frozen=True)
class ReferenceState:
    """Two-electron Gaussian states with analytically known entropy.

    factorized_gaussian: Psi ~ exp(-2 x1^2) exp(-2 x2^2), a single product,
    so L = 0.  triplet_gaussian: the symmetrized product of Gaussians of
    the given width centered at +/- center, whose density sits in two
    off-diagonal lobes; for negligible overlap between the centers L = 1/2.
    """

    kind: str = TRIPLET_GAUSSIAN
    center: float = 8.0
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in (FACTORIZED_GAUSSIAN, TRIPLET_GAUSSIAN):
            raise ValueError(f"unknown reference kind {self.kind!r}")
        if self.width <= 0:
            raise ValueError("width must be positive")


def _project(spec, profile):
    # expansion coefficients of a 1D profile, by quadrature
    x, w = quadrature_nodes(spec.quadrature)
    return basis_values(spec).T @ (w * profile(x))


def _projection_spec(spec, center, width):
    # The integrand pairs a narrow Gaussian with the fastest basis
    # oscillation, which the solver's panel layout never had to resolve.
    # Panel at the Gaussian center and again where its tail dies, then
    # double the rule.
    quad = spec.quadrature
    for b in (center, center + 4.0 * width):
        if 0.0 < b < quad.half_width:
            quad = quad.with_centers(b)
    quad = replace(quad, nodes_per_panel=2 * quad.nodes_per_panel)
    return replace(spec, quadrature=quad)


def reference_coefficients(spec: BasisSpec, ref: ReferenceState):
    """Expand a reference state in the oscillator basis and normalize.

    Raises NumericalError if the basis captures less than 99.9% of the
    state's squared norm, since a lossy expansion would bias the entropy.
    """
    if ref.kind == FACTORIZED_GAUSSIAN:
        g = _project(_projection_spec(spec, 0.0, 0.5), lambda x: np.exp(-2.0 * x ** 2))
        # int exp(-4 x^2) dx = sqrt(pi)/2 per coordinate
        exact = math.pi / 4.0
        a = np.outer(g, g)
    else:
        pspec = _projection_spec(spec, ref.center, ref.width)
        s2 = ref.width ** 2
        gp = _project(pspec, lambda x: np.exp(-((x - ref.center) ** 2) / (2 * s2)))
        gm = _project(pspec, lambda x: np.exp(-((x + ref.center) ** 2) / (2 * s2)))
        # <g+|g+> = sqrt(pi) w and <g+|g-> = <g+|g+> exp(-c^2/w^2)
        ov = math.sqrt(math.pi) * ref.width
        cross = ov * math.exp(-(ref.center ** 2) / s2)
        exact = 2.0 * (ov ** 2 + cross ** 2)
        a = np.outer(gp, gm) + np.outer(gm, gp)
    captured = np.linalg.norm(a) ** 2 / exact
    if captured < 0.999:
        raise NumericalError(f"basis captures only {captured:.4f} of the "
                             "reference state norm")
    return a / np.linalg.norm(a)


def entropy_of_reference(spec: BasisSpec, ref: ReferenceState) -> EntanglementReport:
    return entropy_of_state(reference_coefficients(spec, ref))


def two_site_entropy_exact(center: float, width: float = 1.0) -> float:
    """Closed-form entropy of the symmetrized two-site Gaussian state.

    With overlap s = exp(-c^2/w^2) the Schmidt pair is built from the
    even/odd combinations with weights alpha^2 = (1+s)/2, beta^2 = (1-s)/2:

        L = 1 - (alpha^8 + beta^8) / (alpha^4 + beta^4)^2

    which tends to 1/2 as the centers separate and to 0 as they merge.
    """
    s = math.exp(-(center ** 2) / width ** 2)
    a2 = 0.5 * (1.0 + s)
    b2 = 0.5 * (1.0 - s)
    denom = (a2 ** 2 + b2 ** 2) ** 2
    return 1.0 - (a2 ** 4 + b2 ** 4) / denom
