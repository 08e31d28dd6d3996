"""Command-line front end: metric tables, twisting sweeps/optimization,
figure-backing panel datasets, and state serialization.

All numeric output is locale-independent CSV (17 significant digits) on
stdout or at --out; states are emitted as JSON.  Exit codes: 0 success,
2 configuration error, 3 numerical failure.  The environment variable
SPINPHASE_THREADS caps how many worker threads sweeps may use.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import metrics, twist, wigner
from .algebra import SpinQuantum
from .errors import SpinPhaseError, NoInteriorMinimum
from .states import (DEFAULT_YURKE_ALPHA, StateKind, make_state, save_state)


class ConfigError(Exception):
    """Invalid command-line configuration (exit code 2)."""


@dataclass
class RunConfig:
    """Everything one subcommand invocation needs."""

    subcommand: str
    n_values: list[int] = field(default_factory=list)
    kinds: list[StateKind] = field(default_factory=list)
    out: str | None = None
    fmt: str = "csv"
    sweep_spec: tuple[float, float, int] | None = None
    optimize: bool = False
    metric: str = "both"
    n_phi: int | None = None
    n_costheta: int | None = None
    phase_points: int | None = None
    seed: int | None = None


def _fmt(x) -> str:
    """Fixed 17-significant-digit float formatting (round-trip exact)."""
    if x is None:
        return "undefined"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.17g}"


def _parse_n_spec(spec: str) -> list[int]:
    """Particle-number spec: '20', '2..100', or '10..100:10'."""
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+)(?::(\d+))?)?", spec.strip())
    if not m:
        raise ConfigError(f"cannot parse particle-number spec {spec!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    step = int(m.group(3)) if m.group(3) else 1
    if lo < 1 or hi < lo or step < 1:
        raise ConfigError(f"invalid particle-number range {spec!r}")
    return list(range(lo, hi + 1, step))


def _parse_state_kind(token: str, alpha: float) -> StateKind:
    token = token.strip()
    m = re.fullmatch(r"twist\(([^)]+)\)", token)
    if m:
        try:
            nu = float(m.group(1))
        except ValueError:
            raise ConfigError(f"bad twisting time in {token!r}") from None
        if nu < 0:
            raise ConfigError("twisting time must be >= 0")
        return StateKind.two_axis_evolved(nu)
    table = {
        "coherent": StateKind.coherent(),
        "yurke": StateKind.yurke(alpha),
        "noon": StateKind.noon(),
        "optimal": StateKind.optimal(),
        "sss": StateKind.spin_squeezed(),
        "pss": StateKind.phase_squeezed(),
    }
    if token not in table:
        raise ConfigError(f"unknown state kind {token!r} "
                          f"(expected coherent|yurke|noon|optimal|twist(nu)|sss|pss)")
    return table[token]


def _parse_sweep(spec: str) -> tuple[float, float, int]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"sweep spec must be start:stop:count, got {spec!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"cannot parse sweep spec {spec!r}") from None
    if hi <= lo or count < 16:
        raise ConfigError("sweep needs stop > start and at least 16 samples")
    return lo, hi, count


def _n_workers() -> int:
    raw = os.environ.get("SPINPHASE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    """Order-preserving map, threaded when SPINPHASE_THREADS allows."""
    workers = _n_workers()
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _rows_to_csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _rows_to_json(header: list[str], rows: list[list[str]]) -> str:
    def revive(cell: str):
        if cell in ("undefined", "inf"):
            return None if cell == "undefined" else math.inf
        try:
            return float(cell)
        except ValueError:
            return cell
    docs = [{k: revive(v) for k, v in zip(header, row)} for row in rows]
    return json.dumps(docs, indent=2) + "\n"


def _emit_table(header, rows, cfg: RunConfig):
    if cfg.fmt == "json":
        _emit(_rows_to_json(header, rows), cfg.out)
    else:
        _emit(_rows_to_csv(header, rows), cfg.out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

METRICS_HEADER = ["state", "n", "mean_jx", "mean_jy", "mean_jz", "xi_sq",
                  "xi_sq_min", "zeta_sq", "zeta_sq_rc", "sharpness_re",
                  "sharpness_mod", "variance_approx", "holevo_variance"]


def cmd_metrics(cfg: RunConfig) -> int:
    tasks = []
    for kind in cfg.kinds:
        for n in cfg.n_values:
            if kind.tag == "yurke" and n % 2:
                print(f"note: skipping yurke at odd N={n}", file=sys.stderr)
                continue
            tasks.append((kind, n))

    def one(task):
        kind, n = task
        state = make_state(kind, SpinQuantum(n))
        rep = metrics.squeezing_report(state)
        return [kind.label(), str(n),
                _fmt(rep.mean_spin[0]), _fmt(rep.mean_spin[1]), _fmt(rep.mean_spin[2]),
                _fmt(rep.xi_sq), _fmt(rep.xi_sq_min), _fmt(rep.zeta_sq),
                _fmt(rep.zeta_sq_rc), _fmt(rep.sharpness_re), _fmt(rep.sharpness_mod),
                _fmt(rep.variance_approx), _fmt(rep.holevo_variance)]

    rows = _map_ordered(one, tasks)
    _emit_table(METRICS_HEADER, rows, cfg)
    return 0


def cmd_twist(cfg: RunConfig) -> int:
    if cfg.optimize:
        def one(n):
            j = SpinQuantum(n)
            row = [str(n)]
            if cfg.metric in ("xi", "both"):
                opt = twist.minimize(j, "xi")
                row += [_fmt(opt.nu_star), _fmt(opt.value_at_star)]
            if cfg.metric in ("zeta", "both"):
                opt = twist.minimize(j, "zeta")
                row += [_fmt(opt.nu_star), _fmt(opt.value_at_star)]
            return row

        header = {"xi": ["n", "nu_ss", "min_xi_sq"],
                  "zeta": ["n", "nu_ps", "min_zeta_sq"],
                  "both": ["n", "nu_ss", "min_xi_sq", "nu_ps", "min_zeta_sq"]}[cfg.metric]
        rows = _map_ordered(one, cfg.n_values)
        _emit_table(header, rows, cfg)
        return 0

    if cfg.sweep_spec is None:
        raise ConfigError("twist needs either --sweep start:stop:count or --optimize")
    lo, hi, count = cfg.sweep_spec
    if lo != 0.0:
        raise ConfigError("sweeps start at nu = 0")
    if len(cfg.n_values) != 1:
        raise ConfigError("a sweep needs exactly one particle number")
    curve = twist.sweep(SpinQuantum(cfg.n_values[0]), hi, count)
    rows = [[_fmt(nu), _fmt(x), _fmt(z)]
            for nu, x, z in zip(curve.nu, curve.xi_sq, curve.zeta_sq)]
    _emit_table(["nu", "xi_sq", "zeta_sq"], rows, cfg)
    return 0


def _phase_csv(state, n_points) -> str:
    dist = metrics.phase_distribution(state, 0.0, n_points)
    rows = [[_fmt(p), _fmt(d)] for p, d in zip(dist.phi_grid, dist.density)]
    # close the period so a plain trapezoid over the column integrates to 1
    rows.append([_fmt(np.pi), _fmt(dist.density[0])])
    return _rows_to_csv(["phi", "P"], rows)


def _wigner_csv(state, n_phi, n_costheta) -> str:
    grid = wigner.wigner_function(state, n_phi, n_costheta)
    costheta, values = wigner.equal_area_values(grid)
    rows = []
    for a, x in enumerate(costheta):
        for b, p in enumerate(grid.phi_nodes):
            rows.append([_fmt(p), _fmt(x), _fmt(values[a, b])])
    return _rows_to_csv(["phi", "cos_theta", "W"], rows)


def _coeff_csv(state, axis) -> str:
    coeffs, _residual = metrics.basis_coefficients(state, axis)
    mu = state.j.mu_values()
    rows = [[_fmt(m), _fmt(c)] for m, c in zip(mu, coeffs)]
    return _rows_to_csv(["mu", "coeff"], rows)


def cmd_panel(cfg: RunConfig) -> int:
    if len(cfg.n_values) != 1:
        raise ConfigError("panel needs exactly one particle number")
    n = cfg.n_values[0]
    out_dir = Path(cfg.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    j = SpinQuantum(n)
    for kind in cfg.kinds:
        state = make_state(kind, j)
        label = kind.label()
        (out_dir / f"{label}_wigner.csv").write_text(
            _wigner_csv(state, cfg.n_phi, cfg.n_costheta))
        (out_dir / f"{label}_phase.csv").write_text(
            _phase_csv(state, cfg.phase_points))
        for axis in ("x", "y", "z"):
            (out_dir / f"{label}_coeff_{axis}.csv").write_text(
                _coeff_csv(state, axis))
    return 0


def cmd_state(cfg: RunConfig) -> int:
    if len(cfg.n_values) != 1 or len(cfg.kinds) != 1:
        raise ConfigError("state needs exactly one particle number and one kind")
    kind = cfg.kinds[0]
    state = make_state(kind, SpinQuantum(cfg.n_values[0]))
    doc = save_state(state, kind)
    _emit(json.dumps(doc, indent=2) + "\n", cfg.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinphase",
        description="Collective-spin states for single-shot phase estimation: "
                    "squeezing metrics, twisting optimization, and figure datasets.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, states_default=None):
        p.add_argument("--n", required=True,
                       help="particle number N: '20', '2..100', or '10..100:10'")
        p.add_argument("--out", help="output file (or directory for panel)")
        p.add_argument("--alpha", type=float, default=DEFAULT_YURKE_ALPHA,
                       help="yurke mixing angle in radians (default %(default)s)")
        p.add_argument("--seed", type=int,
                       help="seed for auxiliary randomized diagnostics (reserved)")
        if states_default is not None:
            p.add_argument("--states", default=states_default,
                           help="comma list of coherent|yurke|noon|optimal|"
                                "twist(nu)|sss|pss (default %(default)s)")

    p = sub.add_parser("metrics", help="squeezing metric table, one row per (state, N)")
    common(p, states_default="coherent,optimal,sss,pss,yurke,noon")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("twist", help="twisting-time sweeps and optima")
    common(p)
    p.add_argument("--sweep", help="nu grid as start:stop:count (start must be 0)")
    p.add_argument("--optimize", action="store_true",
                   help="emit optimal twisting times instead of a sweep")
    p.add_argument("--metric", choices=("xi", "zeta", "both"), default="both")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("panel", help="per-state figure datasets "
                                     "(Wigner grid, phase density, coefficient tables)")
    common(p, states_default="coherent,pss,sss,yurke,noon")
    p.add_argument("--grid-phi", type=int, dest="n_phi",
                   help="phi nodes for the Wigner grid (default 4J+1)")
    p.add_argument("--grid-costheta", type=int, dest="n_costheta",
                   help="cos(theta) nodes for the Wigner grid (default 2J+2)")
    p.add_argument("--phase-points", type=int,
                   help="phase-density samples (default max(512, 8J+1))")

    p = sub.add_parser("state", help="serialize one state as JSON")
    p.add_argument("--kind", required=True,
                   help="coherent|yurke|noon|optimal|twist(nu)|sss|pss")
    p.add_argument("--n", required=True, help="particle number N")
    p.add_argument("--out", help="output file")
    p.add_argument("--alpha", type=float, default=DEFAULT_YURKE_ALPHA)
    p.add_argument("--seed", type=int)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    cfg.n_values = _parse_n_spec(args.n)
    cfg.out = args.out
    cfg.seed = getattr(args, "seed", None)
    cfg.fmt = getattr(args, "format", "csv")
    alpha = getattr(args, "alpha", DEFAULT_YURKE_ALPHA)
    if args.subcommand == "state":
        cfg.kinds = [_parse_state_kind(args.kind, alpha)]
    elif hasattr(args, "states") and args.states is not None:
        cfg.kinds = [_parse_state_kind(t, alpha) for t in args.states.split(",")]
    if args.subcommand == "twist":
        cfg.optimize = args.optimize
        cfg.metric = args.metric
        if args.sweep is not None:
            cfg.sweep_spec = _parse_sweep(args.sweep)
    if args.subcommand == "panel":
        cfg.n_phi = args.n_phi
        cfg.n_costheta = args.n_costheta
        cfg.phase_points = args.phase_points
    return cfg


_DISPATCH = {
    "metrics": cmd_metrics,
    "twist": cmd_twist,
    "panel": cmd_panel,
    "state": cmd_state,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if cfg.seed is not None:
            np.random.seed(cfg.seed)
        return _DISPATCH[cfg.subcommand](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoInteriorMinimum as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except SpinPhaseError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
