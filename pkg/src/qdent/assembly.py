"""Two-particle Hamiltonian assembly in the spatially symmetric subspace.

The ground state of the two-electron system is a spin singlet, so its
spatial part is exchange-symmetric and the eigenproblem is solved in the
symmetric subspace of dimension D = n(n+1)/2 spanned by

    |j1 j2> = (|j1>|j2> + |j2>|j1>) / sqrt(2 (1 + delta_{j1 j2})),  j1 <= j2.

A full product-space assembly is retained for validation only.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import cache
from .basis import BasisSpec, basis_values, kinetic_matrix, quadrature_nodes
from .confinement import PotentialParams, potential_value
from .errors import ConvergenceError
from .interactions import CONTACT, SOFT_COULOMB, contact_factors, soft_coulomb_tensor

# hard ceiling on the symmetric-subspace dimension for the dense solver
MAX_SYM_DIM = 5000


@dataclass(frozen=True)
class SymmetricSubspaceMap:
    """Bijection between unordered pairs {j1 <= j2} and indices 0 .. D-1."""

    n_basis: int
    j1: np.ndarray
    j2: np.ndarray

    @property
    def dim(self):
        return self.j1.size

    def unpack(self, vec):
        """Symmetric coefficient matrix A from a packed subspace vector.

        A[j1, j2] = v for j1 = j2 and v / sqrt(2) otherwise; unit vectors
        map to unit-Frobenius-norm matrices.
        """
        a = np.zeros((self.n_basis, self.n_basis))
        a[self.j1, self.j2] = np.where(self.j1 == self.j2, vec, vec / np.sqrt(2.0))
        a[self.j2, self.j1] = a[self.j1, self.j2]
        return a

    def pack(self, coeffs):
        """Inverse of unpack (exact round trip for symmetric input)."""
        v = coeffs[self.j1, self.j2]
        return np.where(self.j1 == self.j2, v, v * np.sqrt(2.0))


@lru_cache(maxsize=8)
def pair_map(n_basis: int) -> SymmetricSubspaceMap:
    j1, j2 = np.triu_indices(n_basis)
    j1.setflags(write=False)
    j2.setflags(write=False)
    return SymmetricSubspaceMap(n_basis, j1, j2)


@dataclass
class HamiltonianMatrix:
    matrix: np.ndarray
    spec: BasisSpec
    params: PotentialParams
    kind: str
    pairs: SymmetricSubspaceMap


def attach_centers(spec: BasisSpec, params: PotentialParams) -> BasisSpec:
    """Basis spec whose quadrature panels split at the well centers, the
    cusp points of |x +- d|.  Sufficient for smooth integrands; V itself
    needs attach_wells."""
    if params.d == 0 or params.d >= spec.quadrature.half_width:
        return spec
    merged = set(spec.quadrature.breakpoints) | {params.d, -params.d}
    quad = replace(spec.quadrature, breakpoints=tuple(sorted(merged)))
    return replace(spec, quadrature=quad)


def _graded_breaks(params: PotentialParams, lim: float):
    """Positive-side panel edges resolving the confinement profile.

    Structural edges sit at the center d and the wall positions |d - R|
    and d + R.  Hard walls (large p) vary on the scale R/p, far below any
    panel width, so panels are graded geometrically toward each wall until
    the layer scale is reached; each graded panel then sees features no
    finer than its own width, which a fixed-order rule integrates to
    spectral accuracy.
    """
    d, r, p = params.d, params.r_range, params.p_exponent
    pts = {b for b in (d, d + r, abs(d - r)) if b < lim}
    scale = r / p
    for wall in (d + r, abs(d - r)):
        if wall >= lim:
            continue
        others = sorted({0.0, lim} | (pts - {wall}))
        below = max((b for b in others if b < wall), default=0.0)
        above = min((b for b in others if b > wall), default=lim)
        for sign, gap in ((-1.0, wall - below), (1.0, above - wall)):
            off = scale
            while off < 0.25 * gap:
                pts.add(wall + sign * off)
                off *= 3.0
    return pts


def attach_wells(spec: BasisSpec, params: PotentialParams) -> BasisSpec:
    """Basis spec whose quadrature resolves the full well geometry: panel
    breaks at the +-d cusps, at the wall positions +-|d - R| and +-(d + R),
    and graded toward the walls when the profile is hard.  The break set is
    mirror-symmetric, preserving exact parity of the composite rule."""
    lim = spec.quadrature.half_width
    extra = set()
    for b in _graded_breaks(params, lim):
        extra |= {b, -b}
    merged = set(spec.quadrature.breakpoints) | extra
    quad = replace(spec.quadrature, breakpoints=tuple(sorted(merged)))
    return replace(spec, quadrature=quad)


def potential_matrix(spec: BasisSpec, values_fn) -> np.ndarray:
    """Quadrature matrix of an arbitrary local potential values_fn(x)."""
    x, w = quadrature_nodes(spec.quadrature)
    phi = basis_values(spec)
    v = np.asarray(values_fn(x), dtype=float)
    return phi.T @ (w[:, None] * v[:, None] * phi)


def one_body_matrix(spec: BasisSpec, params: PotentialParams) -> np.ndarray:
    """h = kinetic + potential in the single-particle basis.

    The potential part is integrated twice, once with the configured rule
    and once with doubled nodes per panel; disagreement beyond 1e-9 on the
    matrix norm raises ConvergenceError.  Results are cached on disk when
    QDENT_CACHE_DIR is set.
    """
    aspec = attach_wells(spec, params)
    key = cache.key_for("h1", aspec.n_basis, aspec.omega,
                        aspec.quadrature.half_width, aspec.quadrature.breakpoints,
                        aspec.quadrature.nodes_per_panel,
                        params.v0, params.d, params.r_range, params.p_exponent)
    cached = cache.load(key)
    if cached is not None and cached.shape == (spec.n_basis,) * 2:
        return cached

    def vfn(x):
        return potential_value(params, x)

    h = kinetic_matrix(aspec) + potential_matrix(aspec, vfn)
    doubled = replace(aspec, quadrature=replace(
        aspec.quadrature, nodes_per_panel=2 * aspec.quadrature.nodes_per_panel))
    h2 = kinetic_matrix(doubled) + potential_matrix(doubled, vfn)
    drift = np.linalg.norm(h - h2)
    if drift > 1e-9 * (1.0 + np.linalg.norm(h2)):
        raise ConvergenceError(
            f"one-body integrals not converged: doubling drift {drift:.3e}")
    cache.store(key, h)
    return h


def symmetric_one_body(h: np.ndarray, pairs: SymmetricSubspaceMap) -> np.ndarray:
    """Project h(x1) + h(x2) onto the symmetric pair basis."""
    j1, j2 = pairs.j1, pairs.j2
    nrm = np.where(j1 == j2, 0.5, 1.0 / np.sqrt(2.0))
    d1 = (j2[:, None] == j2[None, :]) * h[np.ix_(j1, j1)]
    d2 = (j1[:, None] == j1[None, :]) * h[np.ix_(j2, j2)]
    d3 = (j2[:, None] == j1[None, :]) * h[np.ix_(j1, j2)]
    d4 = (j1[:, None] == j2[None, :]) * h[np.ix_(j2, j1)]
    return 2.0 * nrm[:, None] * nrm[None, :] * (d1 + d2 + d3 + d4)


def symmetric_two_body(spec: BasisSpec, kind: str,
                       pairs: SymmetricSubspaceMap) -> np.ndarray:
    """Two-body operator in the symmetric pair basis."""
    j1, j2 = pairs.j1, pairs.j2
    nrm = np.where(j1 == j2, 0.5, 1.0 / np.sqrt(2.0))
    if kind == CONTACT:
        b = contact_factors(spec)
        # S[d, q] = 2 nrm_d B[q, j1] B[q, j2]; Gram form keeps H2 PSD
        s = 2.0 * nrm[:, None] * (b[:, j1] * b[:, j2]).T
        return s @ s.T
    w = soft_coulomb_tensor(spec)
    t1 = w[j1[:, None], j1[None, :], j2[:, None], j2[None, :]]
    t2 = w[j1[:, None], j2[None, :], j2[:, None], j1[None, :]]
    return 2.0 * nrm[:, None] * nrm[None, :] * (t1 + t2)


def assemble(spec: BasisSpec, params: PotentialParams,
             kind: str = CONTACT) -> HamiltonianMatrix:
    """Full symmetric-subspace Hamiltonian for one parameter point."""
    if kind not in (CONTACT, SOFT_COULOMB):
        raise ValueError(f"unknown interaction kind {kind!r}")
    if kind == SOFT_COULOMB and spec.n_basis > 40:
        raise ValueError("soft_coulomb mode requires n_basis <= 40")
    pairs = pair_map(spec.n_basis)
    if pairs.dim > MAX_SYM_DIM:
        raise ValueError(
            f"symmetric dimension {pairs.dim} exceeds the {MAX_SYM_DIM} guard")
    aspec = attach_centers(spec, params)
    h = one_body_matrix(spec, params)
    mat = symmetric_one_body(h, pairs) + symmetric_two_body(aspec, kind, pairs)
    if not np.all(np.isfinite(mat)):
        raise ConvergenceError("non-finite Hamiltonian entries")
    return HamiltonianMatrix(mat, spec, params, kind, pairs)


def full_product_matrix(spec: BasisSpec, params: PotentialParams,
                        kind: str = CONTACT) -> np.ndarray:
    """Unprojected n^2 x n^2 Hamiltonian; validation only, small n."""
    n = spec.n_basis
    if n > 16:
        raise ValueError("full product assembly is restricted to n_basis <= 16")
    aspec = attach_centers(spec, params)
    h = one_body_matrix(spec, params)
    eye = np.eye(n)
    mat = np.kron(h, eye) + np.kron(eye, h)
    if kind == CONTACT:
        b = contact_factors(aspec)
        bp = (b[:, :, None] * b[:, None, :]).reshape(b.shape[0], n * n)
        mat = mat + bp.T @ bp
    else:
        w = soft_coulomb_tensor(aspec)
        # <j k|U|l m> = W[j, l, k, m]
        mat = mat + w.transpose(0, 2, 1, 3).reshape(n * n, n * n)
    return mat
