"""Command-line front end: single solves, sweeps, tables, and plot data.

Configuration is a flat key = value file with # comments; command-line
flags override it.  All table output is CSV with a .meta sidecar carrying
the resolved configuration, the engine version, and the wall time, so every
file explains how it was produced.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .assembly import assemble
from .basis import BasisSpec, QuadratureSpec
from .confinement import PotentialParams, classify_structure
from .entanglement import entropy_of_state
from .errors import NumericalError
from .interactions import CONTACT, KINDS, SOFT_COULOMB
from .observables import coulomb_expectation_of, cuts, default_axis, \
    evaluate_wavefunction, origin_density
from .oracle import GridOracleSpec, oracle_ground
from .spectral import solve_ground
from .sweep import SweepPlan, convergence_study, default_r_grid, run_sweep, \
    transition_sharpness_scan

DEFAULTS = {
    "v0": 10.0,
    "d": 8.0,
    "R": 1.0,
    "p": 2.0,
    "omega": 0.25,
    "interaction": CONTACT,
    # n_basis stays None until the interaction is known: 50 for contact,
    # 30 for soft_coulomb
    "n_basis": None,
    "nodes_per_panel": 96,
    "half_width": 40.0,
    "threads": 1,
}

_INT_KEYS = ("n_basis", "nodes_per_panel", "threads")
_FLOAT_KEYS = ("v0", "d", "R", "p", "omega", "half_width")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; our contract reserves 2 for numerical
    # failures and uses 1 for every validation problem
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def parse_config_file(path):
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read config file: {exc}") from exc
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key = value")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in DEFAULTS:
            raise ValueError(f"{path}:{ln}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, val)
        except ValueError as exc:
            raise ValueError(f"{path}:{ln}: {exc}") from exc
    return out


def _coerce(key, val):
    if key in _INT_KEYS:
        return int(val)
    if key in _FLOAT_KEYS:
        return float(val)
    return val


def resolve_config(args):
    """Defaults, then config file, then explicit flags; validate and fill
    the interaction-dependent basis size."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(parse_config_file(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["interaction"] not in KINDS:
        raise ValueError(f"interaction must be one of {KINDS}")
    if cfg["n_basis"] is None:
        cfg["n_basis"] = 50 if cfg["interaction"] == CONTACT else 30
    if cfg["threads"] < 1:
        raise ValueError("threads must be at least 1")
    return cfg


def dump_config(cfg, dest):
    lines = [f"{key} = {cfg[key]!r}" if isinstance(cfg[key], float)
             else f"{key} = {cfg[key]}" for key in DEFAULTS]
    text = "\n".join(lines) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def build_specs(cfg):
    quad = QuadratureSpec(half_width=cfg["half_width"],
                          nodes_per_panel=cfg["nodes_per_panel"])
    basis = BasisSpec(n_basis=cfg["n_basis"], omega=cfg["omega"],
                      quadrature=quad)
    params = PotentialParams(cfg["v0"], cfg["d"], cfg["R"], cfg["p"])
    return basis, params


# -- table emission ---------------------------------------------------------

def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    if isinstance(value, tuple):
        return ";".join(str(v) for v in value)
    return str(value)


def write_table(path, fieldnames, rows, meta):
    """CSV with 12-significant-digit floats and LF endings, plus a .meta
    sidecar named after the same stem.  Refuses to create files for empty
    row sets."""
    if not rows:
        raise ValueError("refusing to write an empty table")
    path = Path(path)
    body = ",".join(fieldnames) + "\n"
    for row in rows:
        if len(row) != len(fieldnames):
            raise ValueError("row width does not match header")
        body += ",".join(_fmt(v) for v in row) + "\n"
    with open(path, "w", newline="") as fh:
        fh.write(body)
    meta_path = path.with_suffix(".meta")
    lines = [f"{k} = {v}" for k, v in meta.items()]
    with open(meta_path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _meta(cfg, command, t0, **extra):
    meta = {"command": command, "engine_version": __version__}
    meta.update({k: cfg[k] for k in DEFAULTS})
    meta.update(extra)
    meta["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"
    return meta


def _parse_list(text, cast=float):
    try:
        vals = [cast(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad list {text!r}: {exc}") from exc
    if not vals:
        raise ValueError(f"bad list {text!r}: empty")
    return vals


# -- subcommands ------------------------------------------------------------

def _solve_point(basis, params, kind):
    sol = solve_ground(assemble(basis, params, kind))
    u_val = coulomb_expectation_of(sol)
    ent = entropy_of_state(sol.coeff_matrix).linear_entropy
    return sol, u_val, ent


def cmd_solve(args, cfg, t0):
    basis, params = build_specs(cfg)
    sol, u_val, ent = _solve_point(basis, params, cfg["interaction"])
    psi00 = origin_density(sol)
    print(f"R={cfg['R']:g} p={cfg['p']:g} E={sol.energy:.10g} "
          f"gap={sol.gap:.10g} U={u_val:.10g} L={ent:.10g} "
          f"psi00={psi00:.10g}")
    if args.with_oracle:
        ospec = GridOracleSpec(half_width=min(20.0, cfg["half_width"]),
                               points=args.oracle_points, params=params,
                               kind=cfg["interaction"])
        res = oracle_ground(ospec)
        print(f"oracle M={ospec.points} E={res.energy:.10g} "
              f"L={res.linear_entropy:.10g}")
        print(f"delta E={sol.energy - res.energy:.3g} "
              f"L={ent - res.linear_entropy:.3g}")
    return 0


SWEEP_FIELDS = ("R", "p", "energy", "gap", "coulomb_u", "entropy",
                "origin_density", "dE_dR", "dL_dR", "structure", "flags")


def _record_row(rec):
    return (rec.r, rec.p, rec.energy, rec.gap, rec.coulomb_u, rec.entropy,
            rec.origin_density, rec.de_dr, rec.dl_dr, rec.structure,
            rec.flags)


def cmd_sweep(args, cfg, t0):
    basis, _ = build_specs(cfg)
    p_values = _parse_list(args.p_list)
    explicit = args.r_min is not None or args.r_max is not None \
        or args.r_step is not None
    records = []
    if explicit:
        lo = args.r_min if args.r_min is not None else 0.1
        hi = args.r_max if args.r_max is not None else 30.0
        step = args.r_step if args.r_step is not None else 0.1
        if not (0 < lo <= hi and step > 0):
            raise ValueError("need 0 < r-min <= r-max and r-step > 0")
        grid = tuple(np.round(np.arange(lo, hi + 1e-9, step), 10))
        plan = SweepPlan(grid, tuple(p_values), basis, cfg["v0"], cfg["d"],
                         cfg["interaction"], min(args.dr, step))
        records = run_sweep(plan, threads=cfg["threads"],
                            one_sided_edges=args.one_sided)
    else:
        # per-p default grids: the refinement band applies only for p >= 7
        for p in p_values:
            grid = default_r_grid(p)
            spacing = min(b - a for a, b in zip(grid, grid[1:]))
            plan = SweepPlan(grid, (p,), basis, cfg["v0"], cfg["d"],
                             cfg["interaction"], min(args.dr, spacing))
            records.extend(run_sweep(plan, threads=cfg["threads"],
                                     one_sided_edges=args.one_sided))
    write_table(args.out, SWEEP_FIELDS, [_record_row(r) for r in records],
                _meta(cfg, "sweep", t0, p_list=args.p_list,
                      points=len(records)))
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_cuts(args, cfg, t0):
    basis, params = build_specs(cfg)
    sol, _, _ = _solve_point(basis, params, cfg["interaction"])
    axis = default_axis(args.axis_half_width, args.axis_points)
    prof = cuts(sol, axis)
    rows = list(zip(prof.positions, prof.diag_density, prof.antidiag_density))
    write_table(args.out, ("x", "diag_density", "antidiag_density"), rows,
                _meta(cfg, "cuts", t0, origin_density=prof.origin_density,
                      axis_points=args.axis_points,
                      axis_half_width=args.axis_half_width))
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_wavefunction(args, cfg, t0):
    basis, params = build_specs(cfg)
    sol, _, _ = _solve_point(basis, params, cfg["interaction"])
    axis = default_axis(args.axis_half_width, args.axis_points)
    grid = evaluate_wavefunction(sol, axis)
    rows = [(x1, x2, grid.values[i, j])
            for i, x1 in enumerate(axis) for j, x2 in enumerate(axis)]
    write_table(args.out, ("x1", "x2", "psi"), rows,
                _meta(cfg, "wavefunction", t0, axis_points=args.axis_points,
                      axis_half_width=args.axis_half_width))
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_converge(args, cfg, t0):
    n_list = _parse_list(args.n_list, int)
    omega_list = _parse_list(args.omega_list)
    rows = convergence_study(cfg["R"], cfg["p"], n_list, omega_list,
                             cfg["v0"], cfg["d"], cfg["interaction"])
    table = [(r.n_basis, r.omega, r.energy, r.entropy, r.delta_e, r.delta_l,
              r.e_converged, r.l_converged) for r in rows]
    write_table(args.out, ("n_basis", "omega", "energy", "entropy",
                           "delta_E", "delta_L", "E_converged",
                           "L_converged"), table,
                _meta(cfg, "converge", t0, n_list=args.n_list,
                      omega_list=args.omega_list))
    print(f"wrote {len(table)} rows to {args.out}")
    return 0


def cmd_qpt_scan(args, cfg, t0):
    basis, _ = build_specs(cfg)
    p_values = _parse_list(args.p_list)
    rows = transition_sharpness_scan(
        p_values, (args.window_low, args.window_high), args.dr, basis,
        cfg["v0"], cfg["d"], cfg["interaction"], threads=cfg["threads"])
    table = [(r.p, r.max_dl_dr, r.r_at_max_dl, r.max_de_dr, r.r_at_max_de,
              r.min_gap, r.r_at_min_gap) for r in rows]
    write_table(args.out, ("p", "max_dL_dR", "R_at_max_dL", "max_dE_dR",
                           "R_at_max_dE", "min_gap", "R_at_min_gap"), table,
                _meta(cfg, "qpt-scan", t0, p_list=args.p_list,
                      window=f"{args.window_low}..{args.window_high}",
                      scan_dr=args.dr))
    print(f"wrote {len(table)} rows to {args.out}")
    return 0


def cmd_classify(args, cfg, t0):
    _, params = build_specs(cfg)
    print(classify_structure(params))
    return 0


# -- wiring -----------------------------------------------------------------

def build_parser():
    shared = _Parser(add_help=False)
    phys = shared.add_argument_group("model")
    phys.add_argument("--v0", type=float, help="well depth")
    phys.add_argument("--d", type=float, help="half separation of the wells")
    phys.add_argument("--R", type=float, help="well range")
    phys.add_argument("--p", type=float, help="wall hardness exponent")
    phys.add_argument("--omega", type=float, help="basis oscillator frequency")
    phys.add_argument("--n-basis", dest="n_basis", type=int,
                      help="single-particle basis size")
    phys.add_argument("--interaction", choices=KINDS,
                      help="electron-electron interaction")
    phys.add_argument("--nodes-per-panel", dest="nodes_per_panel", type=int,
                      help="quadrature nodes per panel")
    phys.add_argument("--half-width", dest="half_width", type=float,
                      help="quadrature box half width")
    run = shared.add_argument_group("run control")
    run.add_argument("--config", help="flat key = value configuration file")
    run.add_argument("--dump-config", metavar="PATH",
                     help="write the resolved configuration (- for stdout)")
    run.add_argument("--threads", type=int, help="sweep worker processes")

    parser = _Parser(
        prog="qdent",
        description="Two-electron double-well diagonalization engine.",
        epilog="QDENT_CACHE_DIR enables on-disk caching of one-body matrices.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    sp = sub.add_parser("solve", parents=[shared],
                        help="solve one point and print observables")
    sp.add_argument("--with-oracle", action="store_true",
                    help="also run the grid cross-check")
    sp.add_argument("--oracle-points", type=int, default=201,
                    help="grid points for --with-oracle")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("sweep", parents=[shared],
                        help="scan R for one or more p values")
    sp.add_argument("--p-list", default="2",
                    help="comma-separated p values")
    sp.add_argument("--r-min", type=float)
    sp.add_argument("--r-max", type=float)
    sp.add_argument("--r-step", type=float)
    sp.add_argument("--dr", type=float, default=0.05,
                    help="derivative step (capped by the grid spacing)")
    sp.add_argument("--one-sided", action="store_true",
                    help="one-sided derivatives at grid edges")
    sp.add_argument("--out", default="sweep.csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("cuts", parents=[shared],
                        help="same-point and mirror-point density profiles")
    sp.add_argument("--axis-points", type=int, default=801)
    sp.add_argument("--axis-half-width", type=float, default=20.0)
    sp.add_argument("--out", default="cuts.csv")
    sp.set_defaults(func=cmd_cuts)

    sp = sub.add_parser("wavefunction", parents=[shared],
                        help="two-particle wavefunction on a square grid")
    sp.add_argument("--axis-points", type=int, default=201)
    sp.add_argument("--axis-half-width", type=float, default=20.0)
    sp.add_argument("--out", default="wavefunction.csv")
    sp.set_defaults(func=cmd_wavefunction)

    sp = sub.add_parser("converge", parents=[shared],
                        help="basis-size and frequency convergence table")
    sp.add_argument("--n-list", default="10,20,30,40,50")
    sp.add_argument("--omega-list", default="0.25")
    sp.add_argument("--out", default="converge.csv")
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("qpt-scan", parents=[shared],
                        help="transition sharpness metrics per p")
    sp.add_argument("--p-list", default="2,7,50,200")
    sp.add_argument("--window-low", type=float, default=7.5)
    sp.add_argument("--window-high", type=float, default=9.5)
    sp.add_argument("--dr", type=float, default=0.01,
                    help="scan step inside the window")
    sp.add_argument("--out", default="qpt_scan.csv")
    sp.set_defaults(func=cmd_qpt_scan)

    sp = sub.add_parser("classify", parents=[shared],
                        help="label the confinement geometry")
    sp.set_defaults(func=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        t0 = time.perf_counter()
        cfg = resolve_config(args)
        if args.dump_config:
            dump_config(cfg, args.dump_config)
        return args.func(args, cfg, t0)
    except SystemExit as exc:
        return int(exc.code or 0)
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
