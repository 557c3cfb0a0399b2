"""Command-line surface tying the pipeline together.

Subcommands:
  generate    write a benchmark instance file
  candidates  feasible candidate sites at a clearance, as CSV
  solve       discrete + refined solution at one clearance, as JSON
  frontier    clearance sweep, as CSV plus an SVG chart
  baseline    candidate-seeded vs random-feasible multistart comparison

Exit codes: 0 success; 2 usage; 3 infeasible or empty result; 4 I/O or
parse failure; 5 exact mode finished without an optimality proof.

The solve/baseline JSON reports carry full-precision numbers; stdout
summaries round to 2 decimals. Every command is deterministic given its
full flag set, seeds included.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, frontier
from .candidates import candidates_xy, feasible_candidates, write_candidates_csv
from .charts import write_line_chart
from .discrete import InfeasibleCardinalityError, build_matrix
from .frontier import (
    NoFeasibleCandidatesError,
    default_grid,
    solve_one,
    sweep,
    write_frontier_csv,
)
from .instances import InstanceParseError, generate, read_instance, write_instance
from .refine import NoFeasibleSampleError, multistart_random, refine

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4
EXIT_UNPROVEN = 5


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _nonneg_int(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _nonneg_float(value: str) -> float:
    x = float(value)
    if x < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="voromedian",
        description="Minimum-distance constrained planar p-median solver "
        "seeded from clipped Voronoi vertices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a benchmark instance file")
    g.add_argument("--n", type=_positive_int, required=True, help="number of points (1..1000)")
    g.add_argument("--out", required=True, help="instance file to write")

    c = sub.add_parser("candidates", help="feasible candidate sites as CSV")
    c.add_argument("--instance", required=True)
    c.add_argument("--dmin", type=_nonneg_float, required=True, help="minimum clearance")
    c.add_argument("--out", required=True, help="CSV file to write")

    s = sub.add_parser("solve", help="solve at one clearance, JSON report")
    s.add_argument("--instance", required=True)
    s.add_argument("--dmin", type=_nonneg_float, required=True)
    s.add_argument("--p", type=_positive_int, required=True)
    s.add_argument("--mode", choices=["exact", "heuristic", "auto"], default="auto")
    s.add_argument("--starts", type=_positive_int, default=100,
                   help="heuristic multistarts (also unconstrained tries at dmin=0)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--node-budget", type=_positive_int, default=10_000_000,
                   help="branch-and-bound node cap in exact mode")
    s.add_argument("--out", required=True, help="JSON report to write")

    f = sub.add_parser("frontier", help="clearance sweep: CSV + SVG chart")
    f.add_argument("--instance", required=True)
    f.add_argument("--p", type=_positive_int, required=True)
    f.add_argument("--grid-max", type=float, default=None,
                   help="largest clearance (default: 1.2x best candidate clearance)")
    f.add_argument("--grid-steps", type=_nonneg_int, default=60,
                   help="uniform steps from 0 to grid-max (0: the single point D=0)")
    f.add_argument("--out-csv", required=True)
    f.add_argument("--out-svg", required=True)
    f.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1,
                   help="parallel grid-point workers")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--starts", type=_positive_int, default=100)

    b = sub.add_parser("baseline", help="seeded vs random-start comparison")
    b.add_argument("--instance", required=True)
    b.add_argument("--dmin", type=_nonneg_float, required=True)
    b.add_argument("--p", type=_positive_int, required=True)
    b.add_argument("--tries", type=_positive_int, required=True,
                   help="random feasible starting tuples")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True, help="JSON report to write")
    return parser


def cmd_generate(args) -> int:
    if args.n > 1000:
        print("error: --n must be at most 1000", file=sys.stderr)
        return EXIT_USAGE
    write_instance(generate(args.n), args.out)
    print(f"wrote {args.out} (n={args.n})")
    return EXIT_OK


def cmd_candidates(args) -> int:
    instance = read_instance(args.instance)
    sites = feasible_candidates(instance, args.dmin)
    write_candidates_csv(sites, args.out)
    print(f"m={len(sites)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    report = {
        "command": "solve",
        "instance": args.instance,
        "dmin": args.dmin,
        "p": args.p,
        "mode": args.mode,
        "seed": args.seed,
        "m": None,
        "discrete": None,
        "refined": None,
    }
    unproven_exact = False
    if args.dmin > 0:
        sites = feasible_candidates(instance, args.dmin)
        report["m"] = len(sites)
        if len(sites) == 0:
            raise NoFeasibleCandidatesError(f"no candidate clears {args.dmin}")
        if len(sites) < args.p:
            raise InfeasibleCardinalityError(f"{len(sites)} candidates < p={args.p}")
        matrix = build_matrix(instance, sites)
        dsol = frontier._discrete_stage(matrix, instance.weights, args.p, args.mode,
                                        args.starts, args.seed, args.node_budget)
        xy = candidates_xy(sites)
        rsol = refine(instance, args.dmin, xy[list(dsol.selected)])
        report["discrete"] = {
            "objective": dsol.objective,
            "selected": list(dsol.selected),
            "sites": xy[list(dsol.selected)].tolist(),
            "proven": dsol.proven,
        }
        print(f"m={len(sites)}")
        print(f"discrete objective: {dsol.objective:.2f}"
              + (" (proven optimal over candidates)" if dsol.proven else " (heuristic)"))
        unproven_exact = args.mode == "exact" and not dsol.proven
    else:
        record = solve_one(instance, args.p, 0.0, seed=args.seed,
                           unconstrained_tries=args.starts)
        report["m"] = record.candidate_count
        rsol = refine(instance, 0.0, record.facilities)
        print("unconstrained mode (dmin=0)")
    report["refined"] = {
        "objective": rsol.objective,
        "facilities": rsol.facilities.tolist(),
        "assignment": rsol.assignment.tolist(),
        "trace": rsol.trace,
    }
    print(f"refined objective: {rsol.objective:.2f}")
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out}")
    return EXIT_UNPROVEN if unproven_exact else EXIT_OK


def cmd_frontier(args) -> int:
    instance = read_instance(args.instance)
    if args.grid_max is None:
        grid = default_grid(instance, args.grid_steps)
    else:
        if args.grid_max <= 0:
            print("error: --grid-max must be > 0", file=sys.stderr)
            return EXIT_USAGE
        grid = np.linspace(0.0, args.grid_max, args.grid_steps + 1)
    records = sweep(instance, args.p, grid, starts=args.starts, seed=args.seed,
                    workers=args.workers)
    write_frontier_csv(records, args.out_csv)
    solved = [r for r in records if r.objective is not None]
    if not solved:
        print("no grid point was solvable (all gaps)", file=sys.stderr)
        return EXIT_INFEASIBLE
    write_line_chart(
        args.out_svg,
        xs=[r.dmin for r in records],
        ys=[r.objective for r in records],
        xlabel="minimum clearance D",
        ylabel="objective",
        title=f"efficient frontier, p={args.p}",
    )
    gaps = len(records) - len(solved)
    print(f"wrote {args.out_csv} and {args.out_svg} "
          f"({len(solved)} points, {gaps} gaps, objective "
          f"{solved[0].objective:.2f}..{solved[-1].objective:.2f})")
    return EXIT_OK


def cmd_baseline(args) -> int:
    instance = read_instance(args.instance)
    seeded = solve_one(instance, args.p, args.dmin, seed=args.seed,
                       unconstrained_tries=args.tries)
    random_best = multistart_random(instance, args.dmin, args.p,
                                    tries=args.tries, seed=args.seed)
    gap = (random_best.objective - seeded.objective) / seeded.objective
    report = {
        "command": "baseline",
        "instance": args.instance,
        "dmin": args.dmin,
        "p": args.p,
        "tries": args.tries,
        "seed": args.seed,
        "candidate_seeded_objective": seeded.objective,
        "random_multistart_objective": random_best.objective,
        "gap_fraction": gap,
        "candidate_seeded_facilities": seeded.facilities.tolist(),
        "random_multistart_facilities": random_best.facilities.tolist(),
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    print(f"candidate-seeded objective: {seeded.objective:.2f}")
    print(f"random multistart objective ({args.tries} tries): {random_best.objective:.2f}")
    print(f"gap: {100 * gap:.2f}%")
    print(f"wrote {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": cmd_generate,
        "candidates": cmd_candidates,
        "solve": cmd_solve,
        "frontier": cmd_frontier,
        "baseline": cmd_baseline,
    }
    try:
        return handlers[args.command](args)
    except InstanceParseError as exc:
        print(f"error: cannot parse instance: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NoFeasibleCandidatesError, InfeasibleCardinalityError,
            NoFeasibleSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
