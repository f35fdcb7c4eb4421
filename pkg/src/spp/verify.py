"""Executable checks of the pipeline's guarantees on a concrete workspace."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cspp import CsppRun, run_cspp
from .exact import solve_exact
from .graph import SppGraph, tour_length
from .solution import Orientation, order_to_tour
from .workspace import Workspace

REL_TOL = 1e-9
ORACLE_LIMIT = 12


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def violating_triangles(g: SppGraph, rel_tol: float = REL_TOL) -> list[tuple[int, int, int, int]]:
    """Every (a, b, c, k) with ``w(a,c) + w(c,b) < w(a,b)`` beyond ``rel_tol``.

    ``k`` is the number of infinite edges in the triangle. Each unordered
    triangle is scanned under all three labelings; a triangle violating
    under several labelings is reported once per labeling.
    """
    w = g.with_inf()
    inf = g.infinite.copy()
    size = g.size
    out = []
    a_idx, b_idx = np.triu_indices(size, k=1)
    for c in range(size):
        keep = (a_idx != c) & (b_idx != c)
        a, b = a_idx[keep], b_idx[keep]
        via = w[a, c] + w[c, b]
        direct = w[a, b]
        bad = via < direct * (1.0 - rel_tol)
        for x, y in zip(a[bad], b[bad]):
            k = int(inf[x, y]) + int(inf[x, c]) + int(inf[y, c])
            out.append((int(x), int(y), c, k))
    return out


def random_finite_tours(n: int, count: int, rng: np.random.Generator) -> list[list[int]]:
    tours = []
    for _ in range(count):
        perm = rng.permutation(n)
        flips = rng.integers(0, 2, size=n)
        order = [(int(i), Orientation.REVERSE if f else Orientation.FORWARD) for i, f in zip(perm, flips)]
        tours.append(order_to_tour(n, order))
    return tours


def finite_hamiltonian_tours(g: SppGraph) -> list[list[int]]:
    """All finite Hamiltonian cycles, each listed once up to rotation and reflection.

    Depth-first search from node 0 that never steps onto an infinite edge.
    Only practical for a handful of subpaths.
    """
    size = g.size
    finite = ~g.infinite
    np.fill_diagonal(finite, False)
    out = []
    path = [0]
    used = [False] * size
    used[0] = True

    def dfs():
        if len(path) == size:
            if finite[path[-1], 0] and path[1] < path[-1]:
                out.append(list(path))
            return
        for v in np.flatnonzero(finite[path[-1]]):
            v = int(v)
            if not used[v]:
                used[v] = True
                path.append(v)
                dfs()
                path.pop()
                used[v] = False

    dfs()
    return out


def all_hamiltonian_tours(size: int):
    """Every Hamiltonian cycle on ``size`` nodes, once up to rotation and reflection."""
    for rest in itertools.permutations(range(1, size)):
        if rest[0] < rest[-1]:
            yield [0, *rest]


def traverses_all_subpaths(n: int, tour: list[int]) -> bool:
    size = len(tour)
    pos = {v: p for p, v in enumerate(tour)}
    for i in range(n):
        p = pos[2 * n + i]
        nb = {tour[(p - 1) % size], tour[(p + 1) % size]}
        if nb != {i, n + i}:
            return False
    return True


def _close(a: float, b: float, rel: float = REL_TOL) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b), 1.0)


def run_checks(ws: Workspace, samples: int = 100, seed: int = 0) -> tuple[list[Check], CsppRun]:
    run = run_cspp(ws)
    checks = []
    n = ws.n
    g2 = run.g2

    if not run.report.any_updated:
        checks.append(Check("ieti", True, "no-op (no subpath edge violates the triangle inequality)"))
    else:
        fixed = sum(run.report.updated)
        checks.append(Check("ieti", True, f"{fixed} of {n} subpath edges repaired"))

    try:
        g2.check_invariants()
        checks.append(Check("graph", True, "G'' symmetric, finite weights non-negative"))
    except AssertionError as exc:
        checks.append(Check("graph", False, str(exc)))

    halves = all(
        g2.values[i, 2 * n + i] == g2.values[n + i, 2 * n + i] == g2.values[i, n + i] / 2
        for i in range(n)
    )
    checks.append(Check("double-subpath-edges", halves, "w(s,m) == w(m,e) == w(s,e)/2"))

    if g2.size <= 300:
        tri = violating_triangles(g2)
        kinds = sorted({k for *_, k in tri})
        ok = all(k == 1 for *_, k in tri)
        checks.append(
            Check("triangle-inequality", ok, f"{len(tri)} violating labelings, infinite-edge counts {kinds}")
        )
    else:
        checks.append(Check("triangle-inequality", True, "skipped (graph too large for exhaustive scan)"))

    if n >= 2:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for tour in random_finite_tours(n, samples, rng):
            a = tour_length(run.g_prime, tour).value
            b = tour_length(g2, tour).value
            worst = max(worst, abs(a - b) / max(a, 1.0))
        checks.append(
            Check("length-preservation", worst <= REL_TOL, f"{samples} tours, max relative gap {worst:.3g}")
        )

    sol = run.solution
    h = list(sol.h_trail)
    valid = (
        sorted(i for i, _ in sol.order) == list(range(n))
        and sorted(h) == list(range(3 * n))
        and not tour_length(g2, h).is_infinite
    )
    checks.append(Check("solution-validity", valid, "each subpath once, Hamiltonian, finite"))

    if n >= 2:
        tl = tour_length(g2, h).value
        checks.append(
            Check("decoded-length", _close(tl, sol.length), f"workspace {sol.length:.9g} vs G'' {tl:.9g}")
        )

    if 2 <= n <= ORACLE_LIMIT:
        opt = solve_exact(ws)
        t_star = tour_length(g2, order_to_tour(n, opt.order)).value
        ratio = sol.length / opt.length
        checks.append(
            Check(
                "ratio-bound",
                opt.length <= sol.length + REL_TOL * opt.length and sol.length <= 2 * opt.length + 1e-9,
                f"cspp/optimum = {ratio:.6f}",
            )
        )
        sw = sol.stage_weights
        checks.append(Check("bound-mst", sw["mst"] < t_star + 1e-9, f"W(MST)={sw['mst']:.9g} < W(T*)={t_star:.9g}"))
        checks.append(Check("bound-e2", sw["e2"] <= 0.5 * t_star + 1e-9, f"W(E2)={sw['e2']:.9g} <= W(T*)/2"))
        checks.append(
            Check("bound-matching", sw["matching"] <= 0.5 * t_star + 1e-9, f"W(PM*)={sw['matching']:.9g} <= W(T*)/2")
        )
    return checks, run
