"""Brute-force real-space cross-check of the basis-set machinery.

Discretizes the two-particle problem on a uniform grid with a 3-point
kinetic stencil and diagonalizes the symmetric subspace iteratively.  The
point is independence: nothing here touches the oscillator basis, the
quadrature, or the matrix-element code, so agreement between the two paths
validates both.  Accuracy is O(h^2) in the stencil and O(h) in the contact
term, fit for coarse tolerances only.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .confinement import PotentialParams, potential_value
from .errors import ConvergenceError

MAX_POINTS = 401


@dataclass(frozen=True)
class GridOracleSpec:
    half_width: float = 20.0
    points: int = 201
    params: PotentialParams = None
    kind: str = "contact"

    def __post_init__(self):
        if self.points % 2 == 0 or not 3 <= self.points <= MAX_POINTS:
            raise ValueError(f"points must be odd and within 3 .. {MAX_POINTS}")
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if self.kind not in ("contact", "soft_coulomb", "none"):
            raise ValueError(f"unknown interaction kind {self.kind!r}")

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.points - 1)


@dataclass
class GridOracleResult:
    energy: float
    psi: np.ndarray       # symmetric M x M grid wavefunction, grid-normalized
    linear_entropy: float
    gap: float


def _pair_indices(m):
    i, j = np.triu_indices(m)
    return i, j


def _pack(a, i, j):
    v = a[i, j].copy()
    v[i != j] *= math.sqrt(2.0)
    return v


def _unpack(v, i, j, m):
    a = np.zeros((m, m))
    w = v.copy()
    w[i != j] /= math.sqrt(2.0)
    a[i, j] = w
    a[j, i] = w
    return a


def oracle_ground(spec: GridOracleSpec, potential_override=None) -> GridOracleResult:
    """Lowest symmetric eigenpair of the gridded two-particle problem.

    potential_override, if given, is a callable x -> V(x) used instead of
    the two-center wells (the harmonic self-test uses this).
    """
    m = spec.points
    h = spec.spacing
    x = np.linspace(-spec.half_width, spec.half_width, m)
    if potential_override is not None:
        v1 = np.asarray(potential_override(x), dtype=float)
    else:
        if spec.params is None:
            raise ValueError("params required without a potential override")
        v1 = potential_value(spec.params, x)

    vp = v1[:, None] + v1[None, :]
    if spec.kind == "contact":
        vp = vp + np.where(np.eye(m, dtype=bool), 1.0 / h, 0.0)
    elif spec.kind == "soft_coulomb":
        diff = x[:, None] - x[None, :]
        vp = vp + 1.0 / np.sqrt(1.0 + diff ** 2)

    i, j = _pair_indices(m)
    kin = 1.0 / h ** 2   # stencil: (2 psi_i - psi_{i-1} - psi_{i+1}) / (2 h^2) per particle

    def matvec(vec):
        a = _unpack(vec, i, j, m)
        out = (2.0 * kin + vp) * a
        out[1:, :] -= 0.5 * kin * a[:-1, :]
        out[:-1, :] -= 0.5 * kin * a[1:, :]
        out[:, 1:] -= 0.5 * kin * a[:, :-1]
        out[:, :-1] -= 0.5 * kin * a[:, 1:]
        return _pack(out, i, j)

    dim = i.size
    op = LinearOperator((dim, dim), matvec=matvec, dtype=float)
    k = min(2, dim - 1)
    try:
        vals, vecs = eigsh(op, k=k, which="SA", tol=1e-10, maxiter=5000)
    except ArpackNoConvergence as exc:
        raise ConvergenceError(f"grid eigensolver did not converge: {exc}") from exc
    order = np.argsort(vals)
    vals, vecs = vals[order], vecs[:, order]
    psi = _unpack(vecs[:, 0], i, j, m)
    # trapezoid weights make the grid inner product honest at the edges
    w = np.full(m, h)
    w[0] = w[-1] = h / 2.0
    sw = np.sqrt(w)
    b = sw[:, None] * psi * sw[None, :]
    b /= np.linalg.norm(b)
    lam = np.linalg.svd(b, compute_uv=False) ** 2
    ent = 1.0 - float(np.sum(lam ** 2))
    psi = psi / np.linalg.norm(sw[:, None] * psi * sw[None, :])
    gap = float(vals[1] - vals[0]) if k == 2 else math.nan
    return GridOracleResult(float(vals[0]), psi, ent, gap)


def richardson_energy(spec: GridOracleSpec, potential_override=None):
    """Eliminate the O(h^2) stencil error by halving h once.

    Doubling the resolution maps M to 2M - 1; the order-2 extrapolant is
    (4 E_fine - E_coarse) / 3.  Returns (extrapolated, coarse, fine).
    """
    fine_points = 2 * spec.points - 1
    if fine_points > MAX_POINTS:
        raise ValueError(f"refined grid needs {fine_points} points, "
                         f"above the {MAX_POINTS} cap")
    coarse = oracle_ground(spec, potential_override).energy
    fine_spec = GridOracleSpec(spec.half_width, fine_points,
                               spec.params, spec.kind)
    fine = oracle_ground(fine_spec, potential_override).energy
    return (4.0 * fine - coarse) / 3.0, coarse, fine
