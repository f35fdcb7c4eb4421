"""CSPP vs GA on generated environments, in the shape of a results table.

Generates ``--envs-per-size`` workspaces for each size, runs both solvers
``--reps`` times through the bench harness and writes one CSV.

    python scripts/benchmark.py --out results/bench.csv
"""

import argparse
import sys
import tempfile
from pathlib import Path

from spp.cli import bench, write_bench_csv
from spp.ga import default_population
from spp.workspace import generate_random_workspace, save_workspace


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 80])
    ap.add_argument("--envs-per-size", type=int, default=3)
    ap.add_argument("--reps", type=int, default=30)
    ap.add_argument("--extent", type=float, default=1000.0)
    ap.add_argument("--curvature-max", type=float, default=1.5)
    ap.add_argument("--out", help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    rows = []
    with tempfile.TemporaryDirectory() as tmp:
        for n in args.sizes:
            paths = []
            for e in range(args.envs_per_size):
                path = Path(tmp) / f"env_n{n}_{e}.json"
                save_workspace(generate_random_workspace(n, args.extent, args.curvature_max, 100 * n + e), path)
                paths.append(path)
            rows += bench(paths, ["cspp", "ga"], args.reps, ga_pop=default_population(n))
            print(f"n={n} done", file=sys.stderr)
    for r in rows:
        r["env"] = Path(r["env"]).name
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", newline="") as fh:
            write_bench_csv(rows, fh)
    else:
        write_bench_csv(rows, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
