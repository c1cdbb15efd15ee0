"""Shared independent oracles for the test suite.

Everything here is deliberately written from scratch against textbook
formulas so that agreement with the package is evidence, not circularity:
a cyclic Jacobi eigensolver, an arbitrary-precision HO eigenfunction, and
a single-particle finite-difference ground state.
"""

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

mp.mp.dps = 40


def jacobi_eigh(mat, sweeps=100, tol=1e-14):
    """Eigenvalues and eigenvectors of a small symmetric matrix by cyclic
    Jacobi rotations.  Returns eigenvalues ascending with matching columns."""
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < tol * max(1.0, np.abs(np.diag(a)).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = 0.5 * np.arctan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    order = np.argsort(np.diag(a))
    return np.diag(a)[order], v[:, order]


def ho_value_highprec(n, x, omega):
    """n-th orthonormal HO eigenfunction via arbitrary-precision Hermite
    polynomials with factorial normalization (the unstable textbook form,
    made exact by working at 40 digits)."""
    u = mp.sqrt(mp.mpf(omega)) * mp.mpf(x)
    norm = (mp.mpf(omega) / mp.pi) ** mp.mpf("0.25") / mp.sqrt(
        mp.mpf(2) ** n * mp.factorial(n))
    return float(norm * mp.hermite(n, u) * mp.e ** (-u * u / 2))


def fd_ground_energy(vfun, half_width=20.0, points=2001):
    """Ground-state energy of -1/2 d^2/dx^2 + V on a uniform grid with the
    3-point stencil (Dirichlet walls at +-half_width)."""
    x = np.linspace(-half_width, half_width, points)
    h = x[1] - x[0]
    diag = 1.0 / h ** 2 + vfun(x)
    off = np.full(points - 1, -0.5 / h ** 2)
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0),
                            eigvals_only=True)
    return float(vals[0])


def random_symmetric_unit(n, seed):
    """Random symmetric coefficient matrix with unit Frobenius norm."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    a = a + a.T
    return a / np.linalg.norm(a)
