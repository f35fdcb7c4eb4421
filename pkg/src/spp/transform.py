"""Turn a workspace into a TSP graph.

``build_g`` makes the complete graph on subpath endpoints.
``build_g_prime`` adds one middle node per subpath. Each middle node has
exactly two finite edges, so every finite Hamiltonian tour has to walk
the whole subpath.
"""

from __future__ import annotations

import numpy as np

from .graph import SppGraph
from .workspace import Workspace


def endpoint_coordinates(ws: Workspace) -> np.ndarray:
    """``(2n, 2)`` array of node coordinates in node-id order (starts, then ends)."""
    starts, ends = ws.endpoints()
    return np.vstack([starts, ends])


def build_g(ws: Workspace) -> SppGraph:
    n = ws.n
    pts = endpoint_coordinates(ws)
    diff = pts[:, None, :] - pts[None, :, :]
    values = np.hypot(diff[..., 0], diff[..., 1])
    idx = np.arange(n)
    arcs = ws.arc_lengths()
    values[idx, idx + n] = arcs
    values[idx + n, idx] = arcs
    np.fill_diagonal(values, 0.0)
    return SppGraph(n, values)


def build_g_prime(g: SppGraph) -> SppGraph:
    if g.has_middles:
        raise ValueError("graph already contains middle nodes")
    n = g.n
    size = 3 * n
    values = np.zeros((size, size))
    values[: 2 * n, : 2 * n] = g.values
    infinite = np.zeros((size, size), dtype=bool)
    infinite[: 2 * n, : 2 * n] = g.infinite
    infinite[2 * n :, :] = True
    infinite[:, 2 * n :] = True
    for i in range(n):
        s, e, m = i, n + i, 2 * n + i
        half = g.values[s, e] / 2.0
        for v in (s, e):
            values[m, v] = values[v, m] = half
            infinite[m, v] = infinite[v, m] = False
    np.fill_diagonal(infinite, False)
    return SppGraph(n, values, infinite)


def infinite_edge_count(g: SppGraph) -> int:
    """Number of unordered node pairs joined by an infinite edge."""
    return int(np.triu(g.infinite, k=1).sum())


def canonical_tour(n: int) -> list[int]:
    """``s_1 m_1 e_1 s_2 m_2 e_2 ...``, always finite in G' and G''."""
    tour = []
    for i in range(n):
        tour += [i, 2 * n + i, n + i]
    return tour
