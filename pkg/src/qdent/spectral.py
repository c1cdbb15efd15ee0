"""Dense symmetric eigensolve and ground-state packaging."""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .assembly import HamiltonianMatrix
from .basis import BasisSpec
from .confinement import PotentialParams
from .errors import NumericalError


@dataclass
class GroundStateSolution:
    """Lowest eigenpair of the symmetric-subspace problem.

    coeff_matrix is the symmetric n x n matrix A with unit Frobenius norm;
    gap is the distance to the next symmetric state (NaN for a 1x1 space).
    """

    energy: float
    coeff_matrix: np.ndarray
    gap: float
    spec: BasisSpec
    params: PotentialParams
    kind: str


def _fix_sign(a):
    # largest-magnitude coefficient positive; entropy does not care, cut
    # profiles do
    if a.flat[np.argmax(np.abs(a))] < 0:
        return -a
    return a


def _check_residual(mat, vec, val):
    res = np.linalg.norm(mat @ vec - val * vec)
    bound = 1e-9 * np.linalg.norm(mat)
    if res > bound:
        raise NumericalError(f"eigenpair residual {res:.3e} exceeds {bound:.3e}")


def solve_ground(ham: HamiltonianMatrix) -> GroundStateSolution:
    """Ground state of an assembled Hamiltonian, with gap diagnostics."""
    mat = ham.matrix
    dim = mat.shape[0]
    k = min(2, dim)
    try:
        vals, vecs = eigh(mat, subset_by_index=[0, k - 1])
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    _check_residual(mat, vecs[:, 0], vals[0])
    gap = float(vals[1] - vals[0]) if k == 2 else float("nan")
    if k == 2 and gap < 1e-8:
        warnings.warn(f"near-degenerate ground state, gap {gap:.3e}; "
                      "returning the lower state", stacklevel=2)
    a = _fix_sign(ham.pairs.unpack(vecs[:, 0]))
    return GroundStateSolution(float(vals[0]), a, gap,
                               ham.spec, ham.params, ham.kind)


def spectrum_slice(ham: HamiltonianMatrix, k: int):
    """k lowest eigenpairs as (energy, coeff_matrix), ascending."""
    dim = ham.matrix.shape[0]
    if not 1 <= k <= dim:
        raise ValueError(f"k must be within 1 .. {dim}")
    # request at least two pairs so the k=1 path runs the same factorization
    # as solve_ground and reproduces it bit for bit
    kk = min(max(k, 2), dim)
    try:
        vals, vecs = eigh(ham.matrix, subset_by_index=[0, kk - 1])
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    out = []
    for i in range(k):
        _check_residual(ham.matrix, vecs[:, i], vals[i])
        out.append((float(vals[i]), _fix_sign(ham.pairs.unpack(vecs[:, i]))))
    return out
