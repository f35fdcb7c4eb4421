"""Christofides-style 2-approximation on the repaired graph G''.

Steps: minimum spanning tree, close every middle leaf into a two-edge
path, add a minimum perfect matching on the odd-degree nodes, take an
Eulerian circuit, then shortcut repeated nodes but only where the
bypass edge is finite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import SppGraph, tour_length
from .ieti import ViolationReport, apply_ieti
from .matching import Matching, MatchingInstance, min_perfect_matching
from .solution import Orientation, SppSolution, canonical_order, workspace_length
from .transform import build_g, build_g_prime
from .workspace import Workspace


class ShortcutError(AssertionError):
    """A shortcut would have put an infinite edge on the tour."""


@dataclass
class MultiGraph:
    size: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def add(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError("self loops are not allowed")
        self.edges.append((min(a, b), max(a, b)))

    def copy(self) -> MultiGraph:
        return MultiGraph(self.size, list(self.edges))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.size, dtype=np.int64)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def weight(self, g: SppGraph) -> float:
        if any(g.infinite[a, b] for a, b in self.edges):
            return math.inf
        return math.fsum(g.values[a, b] for a, b in self.edges)

    def is_connected(self) -> bool:
        adj = [[] for _ in range(self.size)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.size


def minimum_spanning_tree(g: SppGraph) -> MultiGraph:
    """Dense Prim rooted at node 0.

    Ties go to the lowest node id when picking the next node, and a node's
    parent only changes on a strict improvement, so the result is
    deterministic.
    """
    size = g.size
    if size < 2:
        raise ValueError("MST needs at least two nodes")
    w = g.with_inf()
    in_tree = np.zeros(size, dtype=bool)
    key = np.full(size, np.inf)
    parent = np.full(size, -1, dtype=np.int64)
    key[0] = 0.0
    tree = MultiGraph(size)
    for _ in range(size):
        cand = np.where(in_tree, np.inf, key)
        v = int(np.argmin(cand))
        if not np.isfinite(cand[v]):
            raise ValueError("graph has no finite spanning tree")
        in_tree[v] = True
        if parent[v] >= 0:
            tree.add(int(parent[v]), v)
        better = ~in_tree & (w[v] < key)
        key[better] = w[v][better]
        parent[better] = v
    return tree


def repair_middle_leaves(mst: MultiGraph, g: SppGraph) -> tuple[MultiGraph, float]:
    """Give every leaf middle node its second subpath half.

    Returns G* and the total weight of the added edges.
    """
    n = g.n
    gstar = mst.copy()
    deg = mst.degrees()
    added = []
    nbrs: dict[int, list[int]] = {}
    for a, b in mst.edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    for i in range(n):
        s, e, m = i, n + i, 2 * n + i
        if deg[m] != 1:
            continue
        other = e if nbrs[m][0] == s else s
        gstar.add(m, other)
        added.append(g.values[m, other])
    return gstar, math.fsum(added)


def odd_nodes(mg: MultiGraph) -> list[int]:
    return [int(v) for v in np.flatnonzero(mg.degrees() % 2 == 1)]


def add_matching(
    gstar: MultiGraph,
    g: SppGraph,
    matcher: Callable[[MatchingInstance], Matching] = min_perfect_matching,
) -> tuple[MultiGraph, Matching]:
    odd = odd_nodes(gstar)
    if any(g.is_middle(v) for v in odd):
        raise ValueError("a middle node has odd degree in G*")
    cost = g.values[np.ix_(odd, odd)]
    match = matcher(MatchingInstance(odd, cost))
    ghat = gstar.copy()
    for a, b in match.pairs:
        if g.infinite[a, b]:
            raise ValueError("matching picked an infinite edge")
        ghat.add(a, b)
    return ghat, match


def eulerian_tour(ghat: MultiGraph) -> list[int]:
    """Eulerian circuit by stack-based circuit merging.

    Starts at node 0 and always follows the unused edge to the lowest
    neighbour id. The closing repeat of the start node is dropped.
    """
    deg = ghat.degrees()
    if np.any(deg % 2) or not ghat.is_connected():
        raise ValueError("graph is not Eulerian")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(ghat.size)]
    for k, (a, b) in enumerate(ghat.edges):
        adj[a].append((b, k))
        adj[b].append((a, k))
    for lst in adj:
        lst.sort()
    ptr = [0] * ghat.size
    used = [False] * len(ghat.edges)
    stack = [0]
    circuit = []
    while stack:
        v = stack[-1]
        lst = adj[v]
        while ptr[v] < len(lst) and used[lst[ptr[v]][1]]:
            ptr[v] += 1
        if ptr[v] == len(lst):
            circuit.append(stack.pop())
        else:
            u, k = lst[ptr[v]]
            used[k] = True
            stack.append(u)
    circuit.reverse()
    return circuit[:-1]


def _shortcut(trail: list[int], g: SppGraph) -> tuple[list[int], list[tuple[int, int, int]]]:
    size = len(trail)
    nxt = [(p + 1) % size for p in range(size)]
    prv = [(p - 1) % size for p in range(size)]
    alive = [True] * size
    splices = []
    visit = Counter()
    walked = [False] * size

    def bypass_ok(a: int, b: int) -> bool:
        u, v = trail[a], trail[b]
        # an occurrence next to its middle node carries the subpath; never drop it
        if g.is_middle(u) or g.is_middle(v):
            return False
        # bypassing onto the same node is a zero-weight move
        return u == v or not g.infinite[u, v]

    def splice(p):
        a, b = prv[p], nxt[p]
        nxt[a], prv[b] = b, a
        alive[p] = False
        visit[trail[p]] -= 1
        splices.append((trail[a], trail[p], trail[b]))
        if trail[a] == trail[b] and a != b:
            # two copies of one node are now adjacent: fold them into one
            nxt[a], prv[nxt[b]] = nxt[b], a
            alive[b] = False
            if walked[b]:
                visit[trail[b]] -= 1

    # first pass: keep first occurrences, drop later ones where the bypass is finite
    for p in range(size):
        if not alive[p]:
            continue
        walked[p] = True
        t = trail[p]
        visit[t] += 1
        if visit[t] >= 2 and bypass_ok(prv[p], nxt[p]):
            splice(p)
    # second pass: whatever is still repeated loses its earliest remaining copy
    for p in range(size):
        if not alive[p]:
            continue
        t = trail[p]
        if visit[t] >= 2:
            if not bypass_ok(prv[p], nxt[p]):
                raise ShortcutError(
                    f"cannot bypass node {t} between {trail[prv[p]]} and {trail[nxt[p]]}"
                )
            splice(p)

    start = next(p for p in range(size) if alive[p])
    out = [trail[start]]
    p = nxt[start]
    while p != start:
        out.append(trail[p])
        p = nxt[p]
    if len(set(out)) != len(out):
        raise ShortcutError("shortcut left repeated nodes")
    return out, splices


def confined_shortcut(trail: list[int], g: SppGraph) -> list[int]:
    return _shortcut(list(trail), g)[0]


def decode_solution(h_trail: list[int], ws: Workspace, g: SppGraph | None = None) -> SppSolution:
    """Read subpath order and orientation off a finite Hamiltonian tour of G''.

    The order is reported starting from the lowest subpath index, read in
    the direction that traverses it forward. The length is measured in the
    workspace, not from graph weights.
    """
    n = ws.n
    size = len(h_trail)
    if size != 3 * n or sorted(h_trail) != list(range(3 * n)):
        raise ValueError("h_trail is not a Hamiltonian tour over 3n nodes")
    order = []
    for p, v in enumerate(h_trail):
        if v < 2 * n:
            continue
        i = v - 2 * n
        before, after = h_trail[(p - 1) % size], h_trail[(p + 1) % size]
        if (before, after) == (i, n + i):
            order.append((i, Orientation.FORWARD))
        elif (before, after) == (n + i, i):
            order.append((i, Orientation.REVERSE))
        else:
            raise ValueError(f"subpath {i + 1} is not traversed contiguously")
    order = canonical_order(order)
    return SppSolution(order=order, length=workspace_length(ws, order), h_trail=tuple(h_trail))


@dataclass
class CsppRun:
    """Every intermediate of one CSPP run, kept for verification."""

    g: SppGraph
    g_prime: SppGraph
    g2: SppGraph
    report: ViolationReport
    mst: MultiGraph
    gstar: MultiGraph
    e2_weight: float
    matching: Matching
    ghat: MultiGraph
    trail: list[int]
    h_trail: list[int]
    splices: list[tuple[int, int, int]]
    solution: SppSolution


def run_cspp(ws: Workspace) -> CsppRun:
    g = build_g(ws)
    g_prime = build_g_prime(g)
    g2, report = apply_ieti(g_prime)
    mst = minimum_spanning_tree(g2)
    gstar, e2 = repair_middle_leaves(mst, g2)
    ghat, match = add_matching(gstar, g2)
    trail = eulerian_tour(ghat)
    h_trail, splices = _shortcut(trail, g2)
    decoded = decode_solution(h_trail, ws, g2)
    stage = {
        "mst": mst.weight(g2),
        "e2": e2,
        "matching": match.total_cost,
        "trail": tour_length(g2, trail).value,
    }
    solution = SppSolution(
        order=decoded.order,
        length=decoded.length,
        h_trail=decoded.h_trail,
        stage_weights=stage,
    )
    return CsppRun(
        g, g_prime, g2, report, mst, gstar, e2, match, ghat, trail, h_trail, splices, solution
    )


def solve_cspp(ws: Workspace) -> SppSolution:
    return run_cspp(ws).solution
