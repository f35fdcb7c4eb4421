"""Command line entry point: ``spp gen|transform|solve|bench|verify``.

Exit codes: 0 success, 1 input error, 2 instance exceeds a solver's size
cap, 3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .cspp import ShortcutError, solve_cspp
from .exact import CapacityError, solve_exact
from .ga import GaConfig, run_ga
from .ieti import apply_ieti
from .transform import build_g, build_g_prime
from .verify import run_checks
from .workspace import WorkspaceError, generate_random_workspace, load_workspace, save_workspace

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3


def fmt(x: float) -> float:
    """Round to 9 significant digits for stable output."""
    return float(f"{x:.9g}")


def _rounded(obj):
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_rounded(v) for v in obj]
    return obj


def _emit(obj, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(_rounded(obj), indent=2) + "\n")


def cmd_gen(args) -> int:
    ws = generate_random_workspace(args.n, args.extent, args.curvature_max, args.seed)
    save_workspace(ws, args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    ws = load_workspace(args.input)
    g = build_g(ws)
    if args.stage == "g":
        sys.stdout.write(g.to_csv())
        return EXIT_OK
    gp = build_g_prime(g)
    if args.stage == "g-prime":
        sys.stdout.write(gp.to_csv())
        return EXIT_OK
    g2, report = apply_ieti(gp)
    sys.stdout.write(g2.to_csv())
    if args.report:
        Path(args.report).write_text(json.dumps(_rounded(report.to_json()), indent=2) + "\n")
    return EXIT_OK


def _solve(ws, method: str, seed: int, ga_pop: int | None = None):
    if method == "cspp":
        return solve_cspp(ws), None
    if method == "exact":
        return solve_exact(ws), None
    if method == "ga":
        overrides = {"seed": seed}
        if ga_pop:
            overrides["population_size"] = ga_pop
        return run_ga(ws, GaConfig.for_size(ws.n, **overrides))
    raise ValueError(f"unknown method {method!r}")


def cmd_solve(args) -> int:
    ws = load_workspace(args.input)
    sol, stats = _solve(ws, args.method, args.seed, args.ga_pop)
    payload = sol.to_json()
    if stats is not None:
        stats_path = args.stats_out or "ga_stats.csv"
        Path(stats_path).write_text(stats.to_csv())
        payload["stats_path"] = stats_path
    _emit(payload)
    return EXIT_OK


BENCH_FIELDS = [
    "env",
    "method",
    "n",
    "length_mean",
    "length_std",
    "time_mean",
    "time_std",
    "time_improving",
    "length_improving",
]


def _bench_cell(path, ws, method, reps, ga_pop, seed_base):
    def one(rep):
        t0 = time.perf_counter()
        sol, _ = _solve(ws, method, seed_base + rep, ga_pop)
        # wall time around the solve only, in seconds at millisecond resolution
        return sol, round(time.perf_counter() - t0, 3)

    threads = max(1, int(os.environ.get("SPP_THREADS", "1")))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(reps)))
    else:
        results = [one(r) for r in range(reps)]
    lengths = [s.length for s, _ in results]
    times = [t for _, t in results]
    return {
        "env": str(path),
        "method": method,
        "n": ws.n,
        "length_mean": statistics.fmean(lengths),
        "length_std": statistics.pstdev(lengths),
        "time_mean": statistics.fmean(times),
        "time_std": statistics.pstdev(times),
        "tours": [s.order for s, _ in results],
    }


def bench(env_paths, methods, reps, ga_pop=None, seed_base=0) -> list[dict]:
    rows = []
    for path in env_paths:
        ws = load_workspace(path)
        cells = {m: _bench_cell(path, ws, m, reps, ga_pop, seed_base) for m in methods}
        if "cspp" in cells and "ga" in cells:
            c, g = cells["cspp"], cells["ga"]
            c["time_improving"] = 100.0 * (g["time_mean"] - c["time_mean"]) / g["time_mean"] if g["time_mean"] else None
            c["length_improving"] = 100.0 * (g["length_mean"] - c["length_mean"]) / g["length_mean"]
        rows.extend(cells[m] for m in methods)
    return rows


def write_bench_csv(rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_FIELDS)
    for row in rows:
        cells = []
        for f in BENCH_FIELDS:
            v = row.get(f)
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(f"{v:.9g}")
            else:
                cells.append(str(v))
        writer.writerow(cells)


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    rows = bench(args.envs, methods, args.reps, args.ga_pop, args.seed)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_bench_csv(rows, fh)
    else:
        write_bench_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    ws = load_workspace(args.input)
    checks, _ = run_checks(ws, samples=args.samples, seed=args.seed)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spp", description="Subpath planning: shortest closed tour over 2-D subpaths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random workspace file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--extent", type=float, default=100.0)
    p.add_argument("--curvature-max", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("transform", help="dump G, G' or G'' as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--stage", choices=["g", "g-prime", "g-double-prime"], default="g-double-prime")
    p.add_argument("--report", help="write the IETI violation report (JSON) here")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("solve", help="solve one workspace and print the solution as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["cspp", "exact", "ga"], default="cspp")
    p.add_argument("--seed", type=int, default=0, help="GA seed")
    p.add_argument("--ga-pop", type=int, help="GA population (default depends on n)")
    p.add_argument("--stats-out", help="GA per-generation CSV (default ga_stats.csv)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="repeat solvers over workspaces, report mean/std of length and time")
    p.add_argument("--envs", nargs="+", required=True)
    p.add_argument("--methods", default="cspp,ga")
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--ga-pop", type=int)
    p.add_argument("--seed", type=int, default=0, help="first GA seed; repetition r uses seed + r")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the invariant battery on one workspace")
    p.add_argument("--input", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (WorkspaceError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ShortcutError, AssertionError) as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
