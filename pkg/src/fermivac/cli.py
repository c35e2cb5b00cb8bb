"""Command-line interface: sweeps, scaling studies, series, and checks.

Exit codes: 0 success, 1 runtime failure, 2 argument or configuration
error.  All numeric output is deterministic for a fixed configuration and
seed; sweep files are written atomically so a failed run never leaves a
partial output behind.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .gaussian import canonical_form, ground_state, majorana_coupling
from .models import ModelParams, ModelTag, build_model
from .oracle import SUITE_TOL, equivalence_suite
from .pipeline import (
    GrowthSeries,
    complexity_estimate,
    half_half_series,
    scaling_study,
    site_by_site_series,
)
from .schmidt import entanglement_spectrum, largest_schmidt, renyi_entropy
from .sweep import (
    QUANTITIES,
    SweepSpec,
    run_sweep,
    write_csv,
    write_json,
    write_scaling_csv,
)

WORKERS_ENV = "FERMIVAC_WORKERS"


class UsageError(Exception):
    """Inconsistent arguments detected after parsing; exits with code 2."""


def parse_grid_range(text: str) -> tuple[float, float, int]:
    """lo:hi:steps with inclusive endpoints, or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return (v, v, 1)
        if len(parts) == 3:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
            return (lo, hi, steps)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected VALUE or LO:HI:STEPS, got {text!r}")


def parse_sizes(text: str) -> tuple[int, ...]:
    """lo:hi:step (inclusive endpoints) or a comma-separated list."""
    try:
        if ":" in text:
            lo, hi, step = (int(p) for p in text.split(":"))
            if step <= 0 or hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1, step))
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected LO:HI:STEP or comma-separated integers, got {text!r}"
        ) from None


def _add_model_arguments(sp: argparse.ArgumentParser, point: bool) -> None:
    sp.add_argument(
        "--model",
        required=True,
        choices=[tag.value for tag in ModelTag],
        help="model family",
    )
    sp.add_argument("--n", type=int, help="number of sites")
    sp.add_argument("--side", type=int, help="lattice side (square2d only; n = side^2)")
    sp.add_argument("--t", type=float, default=1.0, help="hopping strength (default 1)")
    if point:
        sp.add_argument("--mu", type=float, required=True, help="chemical potential")
        sp.add_argument("--delta", type=float, required=True, help="pairing strength")


def _resolve_tag(args: argparse.Namespace) -> ModelTag:
    tag = ModelTag(args.model)
    if getattr(args, "side", None) is not None and tag is not ModelTag.SQUARE_LATTICE_2D:
        raise UsageError("--side is only valid with --model square2d")
    return tag


def _resolve_sites(args: argparse.Namespace) -> int:
    if args.side is not None:
        if args.n is not None:
            raise UsageError("give either --n or --side, not both")
        return args.side * args.side
    if args.n is None:
        raise UsageError("one of --n or --side is required")
    return args.n


def _print_series(series: GrowthSeries) -> None:
    print("size source gap eta lambda1 flags")
    for i, size in enumerate(series.sizes):
        flag = "degenerate" if series.degenerate_flags[i] else ""
        print(
            f"{size} {series.step_sources[i]} {series.gaps[i]:.12g} "
            f"{series.overlaps[i]:.12g} {series.lambda1s[i]:.12g} {flag}"
        )


def _build_series(args: argparse.Namespace) -> GrowthSeries:
    tag = _resolve_tag(args)
    n = _resolve_sites(args)
    params = ModelParams(args.mu, args.t, args.delta)
    if args.scheme == "site":
        return site_by_site_series(tag, params, args.n0, n)
    return half_half_series(tag, params, n)


def cmd_sweep(args: argparse.Namespace) -> int:
    tag = _resolve_tag(args)
    n = _resolve_sites(args)
    try:
        spec = SweepSpec(
            tag,
            n,
            args.t,
            args.mu,
            args.delta,
            tuple(args.quantity or ["gap"]),
            epsilon=args.epsilon,
            beta=args.beta,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    workers = args.workers if args.workers else int(os.environ.get(WORKERS_ENV, "1"))
    result = run_sweep(spec, workers)
    if args.format == "json":
        write_json(result, args.out)
    else:
        write_csv(result, args.out)
    print(f"wrote {len(result.rows)} rows to {args.out}")
    return 0


def cmd_scaling(args: argparse.Namespace) -> int:
    tag = _resolve_tag(args)
    params = ModelParams(args.mu, args.t, args.delta)
    study = scaling_study(tag, params, args.sizes, tuple(args.quantity or ["gap"]))
    names = list(study.columns)
    print("n " + " ".join(names))
    for i, n in enumerate(study.sizes):
        print(f"{n} " + " ".join(f"{study.columns[q][i]:.12g}" for q in names))
    if study.loglog is not None:
        print(
            f"loglog: slope={study.loglog.slope:.6g} r2={study.loglog.r_squared:.6g}"
        )
        print(
            f"semilog: slope={study.semilog.slope:.6g} r2={study.semilog.r_squared:.6g}"
        )
    print(f"classification: {study.classification}")
    if args.out is not None:
        count = write_scaling_csv(study, params, args.out)
        print(f"wrote {count} rows to {args.out}")
    return 0


def cmd_series(args: argparse.Namespace) -> int:
    _print_series(_build_series(args))
    return 0


def cmd_schmidt(args: argparse.Namespace) -> int:
    tag = _resolve_tag(args)
    n = _resolve_sites(args)
    h = build_model(tag, n, ModelParams(args.mu, args.t, args.delta))
    decomp = canonical_form(majorana_coupling(h))
    cut_len = args.cut if args.cut is not None else n // 2
    if not 1 <= cut_len < n:
        raise UsageError("--cut must be between 1 and n-1 sites")
    spectrum = entanglement_spectrum(ground_state(h), range(cut_len))
    lam = largest_schmidt(spectrum)
    print("nus: " + " ".join(f"{v:.12g}" for v in spectrum.nus))
    print(f"lambda1: {lam:.12g}")
    for label, k in (("S0", 0.0), ("S1", 1.0), ("S2", 2.0), ("Sinf", math.inf)):
        print(f"{label}: {renyi_entropy(spectrum, k):.12g}")
    if decomp.zero_mode_flags.any():
        print("warning: degenerate ground space, values are for one representative")
    return 0


def cmd_complexity(args: argparse.Namespace) -> int:
    series = _build_series(args)
    est = complexity_estimate(series, args.epsilon, args.prefactor)
    print(f"steps: {len(est.per_step_costs)}")
    print(f"total_cost: {est.total_cost:.12g}")
    print(f"depth_cost: {est.depth_cost:.12g}")
    if math.isinf(est.total_cost):
        print("warning: some steps have vanishing gap or overlap (infinite cost)")
    return 0


def cmd_oracle_check(args: argparse.Namespace) -> int:
    report = equivalence_suite(args.trials, args.max_n, args.seed)
    for name, value in report["deviations"].items():
        print(f"{name}: max deviation {value:.3e}")
    print(f"degenerate draws (bound-checked): {report['degenerate_draws']}")
    print(f"max deviation: {report['max_deviation']:.3e} (tolerance {SUITE_TOL:.0e})")
    if report["max_deviation"] < SUITE_TOL:
        return 0
    print("error: oracle equivalence exceeded tolerance", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermivac",
        description="Gaussian fermionic ground states: gaps, overlaps, and sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="evaluate quantities over a (mu, delta) grid")
    _add_model_arguments(sp, point=False)
    sp.add_argument("--mu", type=parse_grid_range, required=True, metavar="LO:HI:STEPS")
    sp.add_argument("--delta", type=parse_grid_range, required=True, metavar="LO:HI:STEPS")
    sp.add_argument(
        "--quantity",
        action="append",
        choices=list(QUANTITIES),
        help="quantity to evaluate (repeatable; default gap)",
    )
    sp.add_argument("--epsilon", type=float, default=1e-3, help="cost target precision")
    sp.add_argument("--beta", type=float, default=None, help="thermal regularizer (off by default)")
    sp.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker processes (default ${WORKERS_ENV} or 1)",
    )
    sp.add_argument("--out", required=True, help="output path")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("scaling", help="tabulate quantities against size and classify the gap")
    _add_model_arguments(sp, point=True)
    sp.add_argument("--sizes", type=parse_sizes, required=True, metavar="LO:HI:STEP")
    sp.add_argument(
        "--quantity",
        action="append",
        choices=["gap", "eta_site", "eta_half", "lambda1"],
        help="column to tabulate (repeatable; default gap)",
    )
    sp.add_argument("--out", default=None, help="also write the table as CSV (sweep schema)")
    sp.set_defaults(func=cmd_scaling)

    sp = sub.add_parser("series", help="print a growth series")
    _add_model_arguments(sp, point=True)
    sp.add_argument("--scheme", choices=["site", "half"], required=True)
    sp.add_argument("--n0", type=int, default=1, help="starting size (site scheme)")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("schmidt", help="entanglement spectrum and bounds at one point")
    _add_model_arguments(sp, point=True)
    sp.add_argument("--cut", type=int, default=None, help="first-k-sites cut (default n//2)")
    sp.set_defaults(func=cmd_schmidt)

    sp = sub.add_parser("complexity", help="gate-cost estimate for a growth series")
    _add_model_arguments(sp, point=True)
    sp.add_argument("--scheme", choices=["site", "half"], required=True)
    sp.add_argument("--n0", type=int, default=1, help="starting size (site scheme)")
    sp.add_argument("--epsilon", type=float, default=1e-3, help="target precision in (0, 1]")
    sp.add_argument("--prefactor", type=float, default=1.0)
    sp.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("oracle-check", help="dense-oracle equivalence suite")
    sp.add_argument("--trials", type=int, default=50, help="draws per model family")
    sp.add_argument("--max-n", type=int, default=6, help="largest chain/global size")
    sp.add_argument("--seed", type=int, default=7)
    sp.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
