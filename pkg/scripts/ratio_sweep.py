"""Empirical CSPP / optimum ratios over random small workspaces.

    python scripts/ratio_sweep.py --count 500 --max-n 10
"""

import argparse
import statistics
import sys

from spp.cspp import solve_cspp
from spp.exact import solve_exact
from spp.workspace import generate_random_workspace


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--curvatures", type=float, nargs="+", default=[1.0, 1.5, 3.0])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    span = args.max_n - args.min_n + 1
    by_curvature = {c: [] for c in args.curvatures}
    for k in range(args.count):
        n = args.min_n + k % span
        c = args.curvatures[(k // span) % len(args.curvatures)]
        ws = generate_random_workspace(n, 100.0, c, args.seed + k)
        by_curvature[c].append(solve_cspp(ws).length / solve_exact(ws).length)

    print("curvature_max,instances,mean_ratio,max_ratio,optimal_share")
    for c, ratios in by_curvature.items():
        optimal = sum(r <= 1 + 1e-9 for r in ratios) / len(ratios)
        print(f"{c:g},{len(ratios)},{statistics.fmean(ratios):.6f},{max(ratios):.6f},{optimal:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
