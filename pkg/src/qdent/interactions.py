"""Two-body interaction kernels and their matrix elements over the HO basis.

Two kernels are supported: the contact interaction delta(x1 - x2) and the
soft Coulomb repulsion 1/sqrt(1 + (x1 - x2)^2).  Contact elements factorize
exactly through quadrature: with B_{qj} = n_j(x_q) w_q^{1/4},

    U_{j1 j2 k1 k2} = sum_q B_{q j1} B_{q j2} B_{q k1} B_{q k2},

so the rank-Q factor B is all that is ever stored.  The soft kernel is not
separable in the product basis and is materialized as a dense 4-index
tensor (guarded to n_basis <= 40).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import BasisSpec, basis_values, quadrature_nodes

CONTACT = "contact"
SOFT_COULOMB = "soft_coulomb"
KINDS = (CONTACT, SOFT_COULOMB)


@dataclass
class TwoBodyFactorization:
    """Contact: node_values holds B (Q x n_basis), tensor is None.
    Soft Coulomb: tensor holds W[a,b,c,d] = integral of
    n_a(x1) n_b(x1) U(x1-x2) n_c(x2) n_d(x2), node_values is None."""

    kind: str
    node_values: np.ndarray | None = None
    tensor: np.ndarray | None = None


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unknown interaction kind {kind!r}")


@lru_cache(maxsize=8)
def contact_factors(spec: BasisSpec) -> np.ndarray:
    """B matrix of the contact factorization, shape (Q, n_basis)."""
    _, w = quadrature_nodes(spec.quadrature)
    b = basis_values(spec) * w[:, None] ** 0.25
    b.setflags(write=False)
    return b


def contact_element(j1, j2, k1, k2, spec: BasisSpec) -> float:
    """Single contact element by direct quadrature of the 4-function product."""
    n = spec.n_basis
    if not all(0 <= j < n for j in (j1, j2, k1, k2)):
        raise ValueError("basis index out of range")
    x, w = quadrature_nodes(spec.quadrature)
    phi = basis_values(spec)
    return float(np.sum(w * phi[:, j1] * phi[:, j2] * phi[:, k1] * phi[:, k2]))


@lru_cache(maxsize=4)
def soft_coulomb_tensor(spec: BasisSpec) -> np.ndarray:
    """Dense soft-Coulomb tensor W, shape (n, n, n, n).

    Built by tensor-product quadrature over the 1D grid; the kernel is
    smooth, so the panel structure inherited from the potential is more
    than sufficient.
    """
    n = spec.n_basis
    if n > 40:
        raise ValueError("soft-Coulomb tensor is limited to n_basis <= 40")
    x, w = quadrature_nodes(spec.quadrature)
    phi = basis_values(spec)
    # V2[q, a, b] = n_a(x_q) n_b(x_q) w_q, flattened over (a, b)
    v2 = (phi[:, :, None] * phi[:, None, :] * w[:, None, None]).reshape(x.size, n * n)
    kern = 1.0 / np.sqrt(1.0 + (x[:, None] - x[None, :]) ** 2)
    tens = (v2.T @ kern @ v2).reshape(n, n, n, n)
    tens.setflags(write=False)
    return tens


def soft_coulomb_element(j1, j2, k1, k2, spec: BasisSpec) -> float:
    """Element integral n_j1(x1) n_k1(x1) U_lr n_j2(x2) n_k2(x2)."""
    n = spec.n_basis
    if not all(0 <= j < n for j in (j1, j2, k1, k2)):
        raise ValueError("basis index out of range")
    return float(soft_coulomb_tensor(spec)[j1, k1, j2, k2])


def factorization(spec: BasisSpec, kind: str) -> TwoBodyFactorization:
    _check_kind(kind)
    if kind == CONTACT:
        return TwoBodyFactorization(kind, node_values=contact_factors(spec))
    return TwoBodyFactorization(kind, tensor=soft_coulomb_tensor(spec))


def coulomb_expectation(coeffs: np.ndarray, fact: TwoBodyFactorization) -> float:
    """<U> for the two-electron state with coefficient matrix A.

    A must be Frobenius-normalized.  For the contact kind this equals the
    integral of |Psi(x, x)|^2 dx.
    """
    a = np.asarray(coeffs, dtype=float)
    if abs(np.linalg.norm(a) - 1.0) > 1e-8:
        raise ValueError("coefficient matrix must have unit Frobenius norm")
    if fact.kind == CONTACT:
        b = fact.node_values
        diag = np.einsum("qi,ij,qj->q", b, a, b)
        return float(np.sum(diag * diag))
    w = fact.tensor
    return float(np.einsum("jk,lm,jlkm->", a, a, w))
