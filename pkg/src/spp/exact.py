"""Exact SPP solutions for small workspaces.

``solve_exact`` is a Held-Karp style dynamic program over
(visited subpaths, last subpath, orientation). Subpath 0 is pinned as
the first subpath, traversed forward: rotating a closed tour or walking
it backwards does not change its length.

``enumerate_all`` lists all ``n! * 2^n`` orderings/orientations and
serves as the cross-check for the DP.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .solution import Orientation, SppSolution, connector_matrix, solution_from_order
from .workspace import Workspace

EXACT_LIMIT = 14
ENUMERATE_LIMIT = 6


class CapacityError(ValueError):
    """Instance is larger than an exact method supports."""


def solve_exact(ws: Workspace) -> SppSolution:
    n = ws.n
    if n > EXACT_LIMIT:
        raise CapacityError(f"exact solver is capped at n={EXACT_LIMIT}, got {n}")
    if n == 1:
        return solution_from_order(ws, [(0, Orientation.FORWARD)])

    conn = connector_matrix(ws)  # (2n, 2n), index 2*i + o
    arcs = ws.arc_lengths()
    m = n - 1  # subpaths 1..n-1 live in the bitmask as bits 0..m-1
    full = (1 << m) - 1
    # dp[mask, 2*j + o]: cheapest open walk from the exit of subpath 0 (forward)
    # through the subpaths in mask, ending at the exit of subpath j+1 in orientation o
    dp = np.full((1 << m, 2 * m), np.inf)
    parent = np.full((1 << m, 2 * m), -1, dtype=np.int64)
    node_arcs = np.repeat(arcs[1:], 2)
    for j in range(m):
        for o in range(2):
            dp[1 << j, 2 * j + o] = conn[0, 2 * (j + 1) + o] + arcs[j + 1]
    sub = conn[2:, 2:]  # connectors among subpaths 1..n-1
    bits = 1 << np.arange(m)
    for mask in range(1, full + 1):
        row = dp[mask]
        live = np.flatnonzero(np.isfinite(row))
        if live.size == 0:
            continue
        cand = row[live, None] + sub[live, :]  # (live, 2m)
        best = np.argmin(cand, axis=0)
        val = cand[best, np.arange(2 * m)] + node_arcs
        prev = live[best]
        for j in np.flatnonzero((mask & bits) == 0):
            nmask = mask | (1 << int(j))
            for k in (2 * j, 2 * j + 1):
                if val[k] < dp[nmask, k]:
                    dp[nmask, k] = val[k]
                    parent[nmask, k] = prev[k]
    closing = dp[full] + conn[2:, 0]
    k = int(np.argmin(closing))
    order = []
    mask = full
    while k >= 0:
        j, o = divmod(k, 2)
        order.append((j + 1, Orientation.REVERSE if o else Orientation.FORWARD))
        pk = int(parent[mask, k])
        mask &= ~(1 << j)
        k = pk
    order.append((0, Orientation.FORWARD))
    order.reverse()
    return solution_from_order(ws, order)


def enumerate_all(ws: Workspace) -> list[SppSolution]:
    n = ws.n
    if n > ENUMERATE_LIMIT:
        raise CapacityError(f"enumeration is capped at n={ENUMERATE_LIMIT}, got {n}")
    out = []
    for perm in itertools.permutations(range(n)):
        for flips in itertools.product((Orientation.FORWARD, Orientation.REVERSE), repeat=n):
            out.append(solution_from_order(ws, list(zip(perm, flips))))
    return out


def brute_force_length(ws: Workspace) -> float:
    return min(s.length for s in enumerate_all(ws))


def feasible_count(n: int) -> int:
    return math.factorial(n) * 2**n
