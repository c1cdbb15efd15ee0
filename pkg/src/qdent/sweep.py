"""Parameter sweeps, derivative scans, and convergence studies.

A sweep walks a grid of (R, p) well shapes, solves each point, and returns
flat records carrying the observables plus finite-difference derivatives in
R.  Points are independent, so the work parallelizes over processes; output
order is fixed (p-major, R-minor) regardless of worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .assembly import assemble
from .basis import BasisSpec
from .confinement import PotentialParams, classify_structure
from .entanglement import entropy_of_state
from .errors import NumericalError
from .interactions import CONTACT, KINDS
from .observables import coulomb_expectation_of, mean_square_position, \
    origin_density
from .spectral import solve_ground

# a ground state whose rms radius fills a quarter of the quadrature box is
# suspect: the box, not the wells, may be doing the confining
WIDE_STATE_FRACTION = 0.25


@dataclass(frozen=True)
class SweepPlan:
    """Immutable description of a sweep grid.

    r_values must be strictly increasing and positive; dr is the step for
    the auxiliary derivative solves and may not exceed the grid spacing.
    """

    r_values: tuple
    p_values: tuple
    basis: BasisSpec = field(default_factory=BasisSpec)
    v0: float = 10.0
    d: float = 8.0
    kind: str = CONTACT
    dr: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "r_values",
                           tuple(float(r) for r in self.r_values))
        object.__setattr__(self, "p_values",
                           tuple(float(p) for p in self.p_values))
        if not self.r_values or not self.p_values:
            raise ValueError("r_values and p_values must be non-empty")
        if self.r_values[0] <= 0:
            raise ValueError("R values must be positive")
        if any(b <= a for a, b in zip(self.r_values, self.r_values[1:])):
            raise ValueError("R values must be strictly increasing")
        if any(p < 1 for p in self.p_values):
            raise ValueError("p values must be at least 1")
        if self.kind not in KINDS:
            raise ValueError(f"unknown interaction kind {self.kind!r}")
        if not self.dr > 0:
            raise ValueError("dr must be positive")
        if len(self.r_values) > 1:
            spacing = min(b - a for a, b in
                          zip(self.r_values, self.r_values[1:]))
            if self.dr > spacing + 1e-12:
                raise ValueError("dr must not exceed the R grid spacing")
        if self.v0 <= 0 or self.d < 0:
            raise ValueError("v0 must be positive and d non-negative")


@dataclass
class SweepRecord:
    """One solved grid point.  Derivative fields are NaN at grid endpoints
    unless one-sided differences were requested; numeric fields are NaN and
    a flag is set when the point's solve failed."""

    r: float
    p: float
    energy: float
    gap: float
    coulomb_u: float
    entropy: float
    origin_density: float
    de_dr: float
    dl_dr: float
    structure: str
    flags: tuple


def default_r_grid(p: float):
    """Coarse 0.1-step grid over (0, 30], refined tenfold around the hard-
    wall transition window for p >= 7."""
    vals = np.round(np.arange(0.1, 30.0 + 1e-9, 0.1), 10)
    if p >= 7:
        fine = np.round(np.arange(7.5, 9.5 + 1e-9, 0.01), 10)
        vals = np.unique(np.concatenate([vals, fine]))
    return tuple(float(v) for v in vals)


def _energy_entropy(basis, params, kind):
    sol = solve_ground(assemble(basis, params, kind))
    return sol.energy, entropy_of_state(sol.coeff_matrix).linear_entropy


def _sweep_task(args):
    plan, r, p, is_first, is_last, one_sided, want_deriv = args
    try:
        params = PotentialParams(plan.v0, plan.d, r, p)
        structure = classify_structure(params)
    except ValueError as exc:
        return SweepRecord(r, p, *[math.nan] * 7, "invalid",
                           (f"invalid_point:{type(exc).__name__}",))
    flags = []
    try:
        sol = solve_ground(assemble(plan.basis, params, plan.kind))
        energy = sol.energy
        gap = sol.gap
        u_val = coulomb_expectation_of(sol)
        entropy = entropy_of_state(sol.coeff_matrix).linear_entropy
        psi00 = origin_density(sol)
        rms = math.sqrt(mean_square_position(sol))
    except (NumericalError, ValueError) as exc:
        return SweepRecord(r, p, *[math.nan] * 7, structure,
                           (f"solve_error:{type(exc).__name__}",))
    if rms > WIDE_STATE_FRACTION * plan.basis.quadrature.half_width:
        flags.append("wide_state")

    de = dl = math.nan
    try:
        if not want_deriv:
            pass
        elif not (is_first or is_last):
            ep, lp = _energy_entropy(plan.basis,
                                     replace(params, r_range=r + plan.dr),
                                     plan.kind)
            em, lm = _energy_entropy(plan.basis,
                                     replace(params, r_range=r - plan.dr),
                                     plan.kind)
            de = (ep - em) / (2 * plan.dr)
            dl = (lp - lm) / (2 * plan.dr)
        elif one_sided:
            step = plan.dr if is_first else -plan.dr
            ea, la = _energy_entropy(plan.basis,
                                     replace(params, r_range=r + step),
                                     plan.kind)
            de = (ea - energy) / step
            dl = (la - entropy) / step
    except (NumericalError, ValueError) as exc:
        flags.append(f"derivative_error:{type(exc).__name__}")
        de = dl = math.nan
    return SweepRecord(r, p, energy, gap, u_val, entropy, psi00,
                       de, dl, structure, tuple(flags))


def run_sweep(plan: SweepPlan, threads: int = 1, one_sided_edges: bool = False,
              compute_derivatives: bool = True):
    """Solve every (R, p) point of the plan, p-major and R-minor.

    Interior points get central-difference dE/dR and dL/dR from auxiliary
    solves at R +- dr; endpoints get NaN unless one_sided_edges is set.
    compute_derivatives=False skips the auxiliary solves entirely, for
    callers that difference the grid themselves.  Per-point failures land
    in the record's flags and never abort the run.
    """
    last = len(plan.r_values) - 1
    tasks = [(plan, r, p, i == 0, i == last, one_sided_edges,
              compute_derivatives)
             for p in plan.p_values
             for i, r in enumerate(plan.r_values)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_sweep_task, tasks))
    return [_sweep_task(t) for t in tasks]


# -- event detection --------------------------------------------------------

@dataclass
class ExtremumEvent:
    p: float
    observable: str
    kind: str          # "min" or "max"
    r_low: float       # plateau ties widen this interval
    r_high: float
    value: float


@dataclass
class CrossingEvent:
    observable: str
    p_low: float
    p_high: float
    r_low: float
    r_high: float


@dataclass
class AlignmentReport:
    """Whether the repulsion maximum and the entropy minimum sit at the
    same R, to within one grid step."""

    p: float
    u_max_interval: tuple
    l_min_interval: tuple
    aligned: bool


@dataclass
class EventSummary:
    extrema: list
    crossings: list
    alignments: list


def _runs(values, tie_tol):
    # maximal runs of consecutive near-equal values
    runs = [[0, 0]]
    for i in range(1, len(values)):
        if abs(values[i] - values[runs[-1][0]]) <= tie_tol:
            runs[-1][1] = i
        else:
            runs.append([i, i])
    return runs


def _interior_extrema(r, y, tie_tol):
    events = []
    runs = _runs(y, tie_tol)
    for k in range(1, len(runs) - 1):
        lo, hi = runs[k]
        prev = y[runs[k - 1][1]]
        nxt = y[runs[k + 1][0]]
        val = y[lo]
        if val > prev + tie_tol and val > nxt + tie_tol:
            events.append(("max", r[lo], r[hi], val))
        elif val < prev - tie_tol and val < nxt - tie_tol:
            events.append(("min", r[lo], r[hi], val))
    return events


def _extreme_interval(r, y, tie_tol, find_max):
    idx = int(np.argmax(y) if find_max else np.argmin(y))
    best = y[idx]
    lo = idx
    while lo > 0 and abs(y[lo - 1] - best) <= tie_tol:
        lo -= 1
    hi = idx
    while hi < len(y) - 1 and abs(y[hi + 1] - best) <= tie_tol:
        hi += 1
    return lo, hi


def detect_extrema_and_crossings(records, tie_tol: float = 1e-9) -> EventSummary:
    """Locate per-p extrema of <U> and L, cross-p curve crossings, and
    check the repulsion-max / entropy-min coincidence for each p.

    Values within tie_tol of an extreme value extend its interval, so
    exactly flat plateaus report their full width instead of one point.
    """
    by_p = {}
    for rec in records:
        by_p.setdefault(rec.p, []).append(rec)
    extrema, crossings, alignments = [], [], []
    for p, recs in by_p.items():
        if len(recs) < 3:
            raise ValueError(f"need at least 3 records per p, got {len(recs)}")
        recs = sorted(recs, key=lambda rec: rec.r)
        r = [rec.r for rec in recs]
        for name in ("coulomb_u", "entropy"):
            y = [getattr(rec, name) for rec in recs]
            if not all(map(math.isfinite, y)):
                continue
            for kind, r_lo, r_hi, val in _interior_extrema(r, y, tie_tol):
                extrema.append(ExtremumEvent(p, name, kind, r_lo, r_hi, val))
        u = [rec.coulomb_u for rec in recs]
        ent = [rec.entropy for rec in recs]
        if all(map(math.isfinite, u + ent)):
            ulo, uhi = _extreme_interval(r, u, tie_tol, find_max=True)
            llo, lhi = _extreme_interval(r, ent, tie_tol, find_max=False)
            aligned = not (uhi < llo - 1 or lhi < ulo - 1)
            alignments.append(AlignmentReport(
                p, (r[ulo], r[uhi]), (r[llo], r[lhi]), aligned))
    ps = sorted(by_p)
    for i, pa in enumerate(ps):
        for pb in ps[i + 1:]:
            ra = {rec.r: rec for rec in by_p[pa]}
            rb = {rec.r: rec for rec in by_p[pb]}
            common = sorted(set(ra) & set(rb))
            for name in ("coulomb_u", "entropy"):
                diff = [getattr(ra[r], name) - getattr(rb[r], name)
                        for r in common]
                for j in range(len(diff) - 1):
                    if not (math.isfinite(diff[j]) and math.isfinite(diff[j + 1])):
                        continue
                    if diff[j] == 0.0:
                        crossings.append(CrossingEvent(
                            name, pa, pb, common[j], common[j]))
                    elif diff[j] * diff[j + 1] < 0:
                        crossings.append(CrossingEvent(
                            name, pa, pb, common[j], common[j + 1]))
    return EventSummary(extrema, crossings, alignments)


# -- transition sharpness ----------------------------------------------------

@dataclass
class SharpnessRow:
    p: float
    max_dl_dr: float
    r_at_max_dl: float
    max_de_dr: float
    r_at_max_de: float
    min_gap: float
    r_at_min_gap: float


def transition_sharpness_scan(p_values, window, dr=0.01,
                              basis: BasisSpec = None, v0=10.0, d=8.0,
                              kind=CONTACT, threads=1):
    """Scan an R window at fixed step and report, per p, the largest
    |dL/dR| and |dE/dR| and the smallest symmetric-subspace gap.

    Derivatives come from differencing the scan itself, so the row
    resolution equals dr.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (0 < lo < hi):
        raise ValueError("window must satisfy 0 < low < high")
    basis = basis if basis is not None else BasisSpec()
    r_grid = tuple(np.round(np.arange(lo, hi + 1e-9, dr), 10))
    rows = []
    for p in p_values:
        plan = SweepPlan(r_grid, (p,), basis, v0, d, kind, dr)
        recs = run_sweep(plan, threads=threads, compute_derivatives=False)
        r = np.array([rec.r for rec in recs])
        e = np.array([rec.energy for rec in recs])
        ent = np.array([rec.entropy for rec in recs])
        gap = np.array([rec.gap for rec in recs])
        dl = np.abs(np.gradient(ent, r))
        de = np.abs(np.gradient(e, r))
        i_dl, i_de, i_g = np.argmax(dl), np.argmax(de), np.argmin(gap)
        rows.append(SharpnessRow(p, float(dl[i_dl]), float(r[i_dl]),
                                 float(de[i_de]), float(r[i_de]),
                                 float(gap[i_g]), float(r[i_g])))
    return rows


# -- basis convergence -------------------------------------------------------

@dataclass
class ConvergenceRow:
    n_basis: int
    omega: float
    energy: float
    entropy: float
    delta_e: float     # against the next larger N at the same omega
    delta_l: float
    e_converged: bool
    l_converged: bool


def convergence_study(r, p, n_list, omega_list, v0=10.0, d=8.0,
                      kind=CONTACT, e_tol=1e-3, l_tol=1e-3):
    """E and L per (N, omega) at one well shape, with convergence flags.

    A row is flagged converged when the change to the next larger N in the
    list stays below the tolerance; the largest N carries NaN deltas and
    inherits the previous row's verdict.
    """
    params = PotentialParams(v0, d, r, p)
    n_list = sorted(set(int(n) for n in n_list))
    if not n_list or not list(omega_list):
        raise ValueError("n_list and omega_list must be non-empty")
    rows = []
    for omega in omega_list:
        vals = []
        for n in n_list:
            basis = BasisSpec(n_basis=n, omega=float(omega))
            vals.append(_energy_entropy(basis, params, kind))
        for i, n in enumerate(n_list):
            e, ent = vals[i]
            if i + 1 < len(n_list):
                de = abs(vals[i + 1][0] - e)
                dl = abs(vals[i + 1][1] - ent)
                e_ok, l_ok = de < e_tol, dl < l_tol
            else:
                de = dl = math.nan
                e_ok = rows[-1].e_converged if i else False
                l_ok = rows[-1].l_converged if i else False
            rows.append(ConvergenceRow(n, float(omega), e, ent,
                                       de, dl, e_ok, l_ok))
    return rows
