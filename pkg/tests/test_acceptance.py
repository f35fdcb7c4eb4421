"""The nine acceptance criteria, each at its stated tolerance.

Every test records one ``PASS``/``FAIL`` line (shown in the pytest terminal
summary and printed when run with ``-s``). Run directly with
``python tests/test_acceptance.py``.
"""

import statistics
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, random_cost_matrix
from spp.cli import bench
from spp.cspp import run_cspp
from spp.exact import solve_exact
from spp.graph import tour_length
from spp.ieti import apply_ieti
from spp.matching import MatchingInstance, brute_force_matching, min_perfect_matching
from spp.solution import order_to_tour
from spp.transform import build_g, build_g_prime
from spp.verify import random_finite_tours, violating_triangles
from spp.workspace import generate_random_workspace, save_workspace

REL = 1e-9
CURVATURES = (1.0, 1.5, 3.0)


def record(number: int, passed: bool, detail: str) -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def small_instances(count: int, seed_base: int):
    """Workspaces cycling through n = 2..10 and the three curvature settings."""
    out = []
    for k in range(count):
        n = 2 + k % 9
        curvature = CURVATURES[(k // 9) % 3]
        out.append(generate_random_workspace(n, 100.0, curvature, seed_base + k))
    return out


@lru_cache(maxsize=None)
def ratio_runs():
    """CSPP runs and oracle optima for the 243 ratio-bound instances."""
    t0 = time.perf_counter()
    runs = []
    for ws in small_instances(243, 50_000):
        runs.append((ws, run_cspp(ws), solve_exact(ws)))
    return runs, time.perf_counter() - t0


def test_criterion_1_triangle_repair():
    t0 = time.perf_counter()
    instances = small_instances(60, 10_000)
    bad = 0
    violating = 0
    for ws in instances:
        g2, _ = apply_ieti(build_g_prime(build_g(ws)))
        tri = violating_triangles(g2, REL)
        violating += len(tri)
        bad += sum(1 for *_, k in tri if k != 1)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 10.0
    record(
        1,
        ok,
        f"{len(instances)} workspaces, {violating} violating triangle labelings, "
        f"{bad} without exactly one infinite edge, {elapsed:.2f} s (< 10 s)",
    )
    assert ok


def test_criterion_2_length_preservation():
    rng = np.random.default_rng(2)
    worst = 0.0
    instances = small_instances(60, 10_000)
    for ws in instances:
        gp = build_g_prime(build_g(ws))
        g2, _ = apply_ieti(gp)
        for tour in random_finite_tours(ws.n, 100, rng):
            a, b = tour_length(gp, tour).value, tour_length(g2, tour).value
            worst = max(worst, abs(a - b) / max(a, b))
    ok = worst <= REL
    record(2, ok, f"{len(instances)} workspaces x 100 tours, max relative gap {worst:.2e} (<= 1e-9)")
    assert ok


def test_criterion_3_ratio_bound():
    runs, elapsed = ratio_runs()
    ratios = []
    violations = 0
    for _, run, opt in runs:
        length = run.solution.length
        ratios.append(length / opt.length)
        if not (opt.length <= length * (1 + REL) and length <= 2 * opt.length + 1e-9):
            violations += 1
    ok = violations == 0 and elapsed < 60.0
    record(
        3,
        ok,
        f"{len(runs)} instances (n <= 10), {violations} outside [opt, 2 opt], "
        f"mean ratio {statistics.fmean(ratios):.4f}, max {max(ratios):.4f}, {elapsed:.1f} s (< 60 s)",
    )
    assert ok


def test_criterion_4_stage_bounds():
    runs, _ = ratio_runs()
    fails = {"mst": 0, "e2": 0, "matching": 0}
    for ws, run, opt in runs:
        t_star = tour_length(run.g2, order_to_tour(ws.n, opt.order)).value
        sw = run.solution.stage_weights
        fails["mst"] += not sw["mst"] < t_star + 1e-9
        fails["e2"] += not sw["e2"] <= 0.5 * t_star + 1e-9
        fails["matching"] += not sw["matching"] <= 0.5 * t_star + 1e-9
    ok = not any(fails.values())
    record(
        4,
        ok,
        f"{len(runs)} instances; failures W(MST)<W(T*): {fails['mst']}, "
        f"W(E2)<=W(T*)/2: {fails['e2']}, W(PM*)<=W(T*)/2: {fails['matching']}",
    )
    assert ok


def test_criterion_5_matching_oracle():
    rng = np.random.default_rng(5)
    trials = 240
    mismatches = 0
    for t in range(trials):
        k = 2 * (1 + t % 6)
        cost = random_cost_matrix(rng, k, integer=bool(t % 2))
        inst = MatchingInstance(range(k), cost)
        mismatches += min_perfect_matching(inst).total_cost != brute_force_matching(inst).total_cost
    ok = mismatches == 0
    record(5, ok, f"{trials} instances with 2..12 vertices, {mismatches} cost mismatches (exact equality)")
    assert ok


def test_criterion_6_solution_validity():
    runs, _ = ratio_runs()
    extra = [generate_random_workspace(n, 100.0, c, 6000 + n) for n in (20, 40, 80) for c in CURVATURES]
    bad = 0
    worst = 0.0
    all_runs = [run for _, run, _ in runs] + [run_cspp(ws) for ws in extra]
    for run in all_runs:
        sol, n = run.solution, run.g.n
        h = list(sol.h_trail)
        h_len = tour_length(run.g2, h)
        covered = sorted(i for i, _ in sol.order) == list(range(n)) and sorted(h) == list(range(3 * n))
        if not covered or h_len.is_infinite:
            bad += 1
            continue
        gap = abs(h_len.value - sol.length) / sol.length
        worst = max(worst, gap)
        bad += gap > REL
    ok = bad == 0
    record(
        6,
        ok,
        f"{len(all_runs)} CSPP outputs, {bad} invalid; max |decoded - G'' length| relative {worst:.2e} (<= 1e-9)",
    )
    assert ok


@lru_cache(maxsize=None)
def table_bench(tmp_root):
    """CSPP vs GA on 3 environments each at n = 20/50/80, 30 repetitions."""
    rows = []
    for n, pop in ((20, 100), (50, 200), (80, 300)):
        paths = []
        for e in range(3):
            path = f"{tmp_root}/env_n{n}_{e}.json"
            save_workspace(generate_random_workspace(n, 1000.0, 1.5, 100 * n + e), path)
            paths.append(path)
        rows += bench(paths, ["cspp", "ga"], reps=30, ga_pop=pop, seed_base=0)
    return rows


@pytest.fixture(scope="module")
def bench_rows(tmp_path_factory):
    return table_bench(str(tmp_path_factory.mktemp("envs")))


def test_criterion_7_determinism(bench_rows):
    cspp = [r for r in bench_rows if r["method"] == "cspp"]
    ga = [r for r in bench_rows if r["method"] == "ga"]
    same = all(r["length_std"] == 0.0 and len(set(r["tours"])) == 1 for r in cspp)
    spread = all(r["length_std"] > 0.0 for r in ga if r["n"] >= 20)
    ok = same and spread
    record(
        7,
        ok,
        f"CSPP: {sum(r['length_std'] == 0.0 and len(set(r['tours'])) == 1 for r in cspp)}/{len(cspp)} "
        f"environments with 30 identical lengths and tours; GA: {sum(r['length_std'] > 0 for r in ga)}/{len(ga)} "
        f"environments with positive length stddev",
    )
    assert ok


def test_criterion_8_complexity():
    sizes = [50, 100, 200, 400]
    times = []
    for n in sizes:
        ws = generate_random_workspace(n, 1000.0, 1.5, 8000 + n)
        reps = 3 if n < 400 else 1
        samples = []
        for _ in range(reps):
            t0 = time.perf_counter()
            run_cspp(ws)
            samples.append(time.perf_counter() - t0)
        times.append(min(samples))
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    ok = slope <= 3.3 and times[-1] < 120.0
    detail = ", ".join(f"n={n}: {t:.3f} s" for n, t in zip(sizes, times))
    record(8, ok, f"log-log slope {slope:.2f} (<= 3.3); {detail}")
    assert ok


def test_criterion_9_table_echo(bench_rows):
    by_env = {}
    for r in bench_rows:
        by_env.setdefault(r["env"], {})[r["method"]] = r
    faster = sum(v["cspp"]["time_mean"] < v["ga"]["time_mean"] for v in by_env.values())
    shorter = sum(v["cspp"]["length_mean"] <= v["ga"]["length_mean"] for v in by_env.values())
    ok = faster == len(by_env) and shorter >= 8
    cells = "; ".join(
        f"n={v['cspp']['n']} cspp {v['cspp']['length_mean']:.1f} in {v['cspp']['time_mean'] * 1e3:.1f} ms "
        f"vs ga {v['ga']['length_mean']:.1f}({v['ga']['length_std']:.1f}) in {v['ga']['time_mean'] * 1e3:.0f} ms"
        for v in by_env.values()
    )
    record(
        9,
        ok,
        f"CSPP faster on {faster}/{len(by_env)} environments, length <= GA mean on {shorter}/{len(by_env)} "
        f"(need 9/9 and >= 8/9). {cells}",
    )
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
