"""Command-line front end.

Exit codes: 0 success, 2 usage or parameter error, 3 singular matrix.
Machine formats (csv, json) print floats with the shortest round-trip
representation; tables use 6 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .blahut_arimoto import blahut_arimoto
from .capacity import solve_closed_form, stationarity_residual
from .markov_sim import DEFAULT_SEED, SimConfig, simulate_transitions
from .matrix import ChannelParams, ParameterError, SingularAlpha, build_inverse, build_matrix
from .sweep import SWEEP_HEADER, alpha_grid, run_sweep

EXIT_USAGE = 2
EXIT_SINGULAR = 3
SWEEP_GUARD = 1e-6


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _table(m: np.ndarray) -> str:
    cells = [[_fmt(v) for v in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _vector(v) -> str:
    return "[" + ", ".join(_fmt(x) for x in v) + "]"


def cmd_matrix(args, out) -> None:
    params = ChannelParams(args.n, args.alpha)
    m = build_matrix(params)
    entries = build_inverse(params, m).entries if args.inverse else m.entries
    if args.format == "csv":
        out.write("w_from,w_to,value\n")
        for (i, j), v in np.ndenumerate(entries):
            out.write(f"{i},{j},{float(v)!r}\n")
    elif args.format == "json":
        doc = {"n": params.n, "alpha": params.alpha, "inverse": args.inverse,
               "entries": entries.tolist()}
        out.write(json.dumps(doc) + "\n")
    else:
        label = "inverse of A" if args.inverse else "A"
        out.write(f"{label} (n={params.n}, alpha={params.alpha:g})\n{_table(entries)}\n")


def cmd_capacity(args, out) -> None:
    params = ChannelParams(args.n, args.alpha)
    a = build_matrix(params)
    inv = build_inverse(params, a)
    sol = solve_closed_form(a, inv)
    ba = blahut_arimoto(a)
    resid = stationarity_residual(a, inv, sol)
    if args.format == "json":
        doc = {
            "n": params.n, "alpha": params.alpha,
            "k_vector": sol.k_vector.tolist(), "nu_star": sol.nu_star,
            "q_star": sol.q_star.tolist(), "p_star": sol.p_star.tolist(),
            "capacity_closed_bits": sol.capacity_bits,
            "capacity_ba_bits": ba.capacity_bits,
            "validity": str(sol.validity), "capacity_role": str(sol.capacity_role),
            "stationarity_residual": resid,
        }
        out.write(json.dumps(doc) + "\n")
        return
    lines = [
        f"n = {params.n}, alpha = {params.alpha:g}",
        f"K        = {_vector(sol.k_vector)}",
        f"nu*      = {_fmt(sol.nu_star)}",
        f"q*       = {_vector(sol.q_star)}",
        f"p*       = {_vector(sol.p_star)}",
        f"capacity (closed form)     = {_fmt(sol.capacity_bits)} bits [{sol.capacity_role}]",
        f"capacity (Blahut-Arimoto)  = {_fmt(ba.capacity_bits)} bits",
        f"validity = {sol.validity}",
        f"stationarity residual = {resid:.3g}",
    ]
    out.write("\n".join(lines) + "\n")


def cmd_sweep(args, out) -> None:
    if not 1 <= args.n_max <= 30:
        raise UsageError("n_max must be in [1, 30]")
    if not 0.0 < args.alpha_min <= args.alpha_max < 0.5 - SWEEP_GUARD:
        raise UsageError("need 0 < alpha_min <= alpha_max < 0.5")
    if args.alpha_step <= 0.0:
        raise UsageError("alpha_step must be positive")
    records = run_sweep(args.n_max, alpha_grid(args.alpha_min, args.alpha_max, args.alpha_step))
    text = SWEEP_HEADER + "\n" + "".join(r.csv_row() + "\n" for r in records)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_simulate(args, out) -> None:
    if args.seed_pos is not None and args.seed is not None and args.seed_pos != args.seed:
        raise UsageError("seed given twice with different values")
    seed = next((s for s in (args.seed_pos, args.seed) if s is not None), DEFAULT_SEED)
    params = ChannelParams(args.n, args.alpha)
    try:
        config = SimConfig(params, args.trials, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    est = simulate_transitions(config)
    out.write(
        f"empirical transition matrix (n={params.n}, alpha={params.alpha:g}, "
        f"trials/state={est.trials_per_state}, seed={seed})\n"
        f"{_table(est.empirical)}\n"
        f"max_abs_deviation = {est.max_abs_deviation!r}\n"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wchan",
        description="Transition matrices, closed-form inverse and capacity of "
                    "n parallel flipping binary channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="print the transition matrix or its inverse")
    p.add_argument("n", type=int)
    p.add_argument("alpha", type=float)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("capacity", help="closed-form capacity next to Blahut-Arimoto")
    p.add_argument("n", type=int)
    p.add_argument("alpha", type=float)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sweep", help="CSV of capacity records over an (n, alpha) grid")
    p.add_argument("n_max", type=int)
    p.add_argument("alpha_min", type=float)
    p.add_argument("alpha_max", type=float)
    p.add_argument("alpha_step", type=float)
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the transition matrix")
    p.add_argument("n", type=int)
    p.add_argument("alpha", type=float)
    p.add_argument("trials", type=int)
    p.add_argument("seed_pos", nargs="?", type=int, metavar="seed")
    p.add_argument("--seed", type=int, help=f"PRNG seed (default {DEFAULT_SEED})")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except SingularAlpha as exc:
        print(f"wchan: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ParameterError, UsageError) as exc:
        print(f"wchan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
