"""
Orthonormal 1D harmonic-oscillator basis and quadrature grids.

All integrals in the engine are evaluated on a composite Gauss-Legendre
grid over a truncated interval [-X_max, X_max].  The grid is split into
panels at configurable breakpoints so that derivative kinks of the
confinement profile (located at the well centers) never sit inside a
panel.  Basis functions are generated by the normalized three-term
recurrence, which is stable far beyond n = 50; the raw Hermite-polynomial
form with factorial normalization overflows near n = 85 and loses
precision much earlier, so it is never used here.
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule on [-half_width, half_width].

    Parameters
    ----------
    half_width : float
        Integration cutoff X_max in effective Bohr radii.
    breakpoints : tuple of float
        Interior panel edges, strictly inside (-half_width, half_width).
        Kept sorted; duplicates are rejected since they would create a
        zero-width panel.
    nodes_per_panel : int
        Gauss-Legendre order per panel; the rule is exact for polynomials
        of degree 2*nodes_per_panel - 1 on each panel.
    """

    half_width: float = 40.0
    breakpoints: tuple = ()
    nodes_per_panel: int = 96

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.nodes_per_panel < 2:
            raise ValueError("nodes_per_panel must be at least 2")
        bp = tuple(float(b) for b in self.breakpoints)
        if any(not -self.half_width < b < self.half_width for b in bp):
            raise ValueError("breakpoints must lie strictly inside the interval")
        if len(set(bp)) != len(bp):
            raise ValueError("duplicate breakpoint would create a zero-width panel")
        object.__setattr__(self, "breakpoints", tuple(sorted(bp)))

    def with_centers(self, d):
        """Return a copy whose breakpoints include +-d (no-op for d = 0)."""
        if d == 0:
            return self
        merged = set(self.breakpoints) | {-float(d), float(d)}
        return replace(self, breakpoints=tuple(sorted(merged)))


@dataclass(frozen=True)
class BasisSpec:
    """Truncated single-particle HO basis with its quadrature configuration.

    Parameters
    ----------
    n_basis : int
        Number of basis functions, HO quantum numbers 0 .. n_basis - 1.
    omega : float
        Oscillator frequency in effective Hartree (hbar = m* = 1).
    quadrature : QuadratureSpec
        Grid used for every integral involving this basis.
    """

    n_basis: int = 50
    omega: float = 0.25
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if self.n_basis < 1:
            raise ValueError("n_basis must be at least 1")
        if not self.omega > 0:
            raise ValueError("omega must be positive")


def build_quadrature(quad: QuadratureSpec):
    """Nodes and weights of the composite rule.

    Returns
    -------
    x, w : ndarray
        Node positions and weights, concatenated over panels in left-to-
        right order.  The reference Gauss-Legendre rule is symmetrized
        exactly so that the full grid is mirror-symmetric whenever the
        breakpoints are, which keeps parity identities exact in floating
        point.
    """
    t, w = leggauss(quad.nodes_per_panel)
    # enforce exact +- symmetry of the reference rule
    t = 0.5 * (t - t[::-1])
    w = 0.5 * (w + w[::-1])
    edges = [-quad.half_width, *quad.breakpoints, quad.half_width]
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (b - a) * t + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


@lru_cache(maxsize=16)
def quadrature_nodes(quad: QuadratureSpec):
    """Cached, read-only (nodes, weights) for a quadrature spec."""
    x, w = build_quadrature(quad)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=16)
def basis_values(spec: BasisSpec):
    """Cached, read-only table of all basis functions on the spec's grid."""
    x, _ = quadrature_nodes(spec.quadrature)
    phi = ho_table(spec.n_basis, x, spec.omega)
    phi.setflags(write=False)
    return phi


def ho_table(n_max, x, omega):
    """Matrix of HO eigenfunction values, shape (len(x), n_max).

    Column n holds the orthonormal eigenfunction of quantum number n
    evaluated at every grid point, built by the normalized recurrence

        h_0 = (omega/pi)^(1/4) exp(-u^2/2),      u = sqrt(omega) x
        h_1 = sqrt(2) u h_0
        h_{n+1} = sqrt(2/(n+1)) u h_n - sqrt(n/(n+1)) h_{n-1}
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("positions must be finite")
    u = np.sqrt(omega) * x
    out = np.zeros(x.shape + (n_max,))
    h0 = (omega / np.pi) ** 0.25 * np.exp(-0.5 * u * u)
    out[..., 0] = h0
    if n_max > 1:
        out[..., 1] = np.sqrt(2.0) * u * h0
    for n in range(1, n_max - 1):
        out[..., n + 1] = (np.sqrt(2.0 / (n + 1)) * u * out[..., n]
                           - np.sqrt(n / (n + 1)) * out[..., n - 1])
    return out


def eval_ho_function(n, x, omega):
    """Value of the n-th orthonormal HO eigenfunction at x.

    Works for scalar or array x; n must be a non-negative integer.
    """
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    xa = np.asarray(x, dtype=float)
    vals = ho_table(n + 1, xa, omega)[..., n]
    return float(vals) if np.isscalar(x) else vals


def kinetic_matrix(spec: BasisSpec):
    """Analytic matrix of -1/2 d^2/dx^2 in the HO basis.

    Ladder algebra gives T_nn = omega (2n+1)/4 and
    T_{n,n+2} = -omega sqrt((n+1)(n+2))/4, all other entries zero.
    """
    n = spec.n_basis
    t = np.zeros((n, n))
    ns = np.arange(n)
    t[ns, ns] = spec.omega * (2 * ns + 1) / 4.0
    for m in range(n - 2):
        t[m, m + 2] = t[m + 2, m] = -spec.omega * np.sqrt((m + 1) * (m + 2)) / 4.0
    return t


def second_moment_matrix(spec: BasisSpec):
    """Analytic matrix of x^2 in the HO basis.

    <n|x^2|n> = (2n+1)/(2 omega), <n|x^2|n+2> = sqrt((n+1)(n+2))/(2 omega).
    Used for spatial-spread diagnostics.
    """
    n = spec.n_basis
    m2 = np.zeros((n, n))
    ns = np.arange(n)
    m2[ns, ns] = (2 * ns + 1) / (2.0 * spec.omega)
    for m in range(n - 2):
        m2[m, m + 2] = m2[m + 2, m] = np.sqrt((m + 1) * (m + 2)) / (2.0 * spec.omega)
    return m2
