"""CSPP wall time versus n, with a log-log slope fit.

    python scripts/complexity.py --sizes 50 100 200 400 800
"""

import argparse
import sys
import time

import numpy as np

from spp.cspp import run_cspp
from spp.workspace import generate_random_workspace


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--reps", type=int, default=3, help="best-of repetitions per size")
    ap.add_argument("--curvature-max", type=float, default=1.5)
    args = ap.parse_args(argv)

    times = []
    print("n,seconds")
    for n in args.sizes:
        ws = generate_random_workspace(n, 1000.0, args.curvature_max, 8000 + n)
        best = float("inf")
        for _ in range(args.reps):
            t0 = time.perf_counter()
            run_cspp(ws)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
        print(f"{n},{best:.4f}", flush=True)
    if len(times) >= 2:
        slope = np.polyfit(np.log(args.sizes), np.log(times), 1)[0]
        print(f"# log-log slope {slope:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
