"""Repair triangle-inequality violations around subpath edges.

One pass over the subpaths in ascending index order. When the cheapest
detour ``s_i -> d -> e_i`` is shorter than the subpath edge, the subpath
edge (and its two halves) is shortened and every finite edge leaving
``s_i`` or ``e_i`` is lengthened by half the amount. Any finite
Hamiltonian tour enters and leaves the subpath exactly once, so tour
lengths do not change.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import SppGraph


@dataclass
class ViolationReport:
    dv: list[float] = field(default_factory=list)
    updated: list[bool] = field(default_factory=list)

    @property
    def any_updated(self) -> bool:
        return any(self.updated)

    def to_json(self) -> list[dict]:
        return [
            {"index": i + 1, "dv": float(dv), "updated": bool(up)}
            for i, (dv, up) in enumerate(zip(self.dv, self.updated))
        ]


def _candidates(g: SppGraph, i: int) -> np.ndarray:
    # middle nodes are excluded: m_i only ties the subpath edge, any other m_j is infinite
    mask = np.ones(2 * g.n, dtype=bool)
    mask[[i, g.n + i]] = False
    return np.flatnonzero(mask)


def degree_of_violation(g: SppGraph, i: int) -> float:
    """Half the gap between the cheapest two-edge detour and the subpath edge.

    Negative iff some triangle on ``s_i e_i`` violates the triangle
    inequality. Uses the graph's current weights.
    """
    if g.n < 2:
        raise ValueError("degree of violation needs at least two subpaths")
    if not 0 <= i < g.n:
        raise IndexError(f"subpath {i} out of range")
    s, e = i, g.n + i
    d = _candidates(g, i)
    detour = np.min(g.values[s, d] + g.values[e, d])
    return 0.5 * (detour - g.values[s, e])


def apply_ieti(g_prime: SppGraph) -> tuple[SppGraph, ViolationReport]:
    if not g_prime.has_middles:
        raise ValueError("IETI expects a graph with middle nodes")
    g = g_prime.copy()
    n = g.n
    report = ViolationReport()
    if n == 1:
        return g, report
    w = g.values
    for i in range(n):
        dv = degree_of_violation(g, i)
        report.dv.append(dv)
        report.updated.append(dv < 0)
        if dv >= 0:
            continue
        s, e, m = i, n + i, 2 * n + i
        amount = -dv
        w[s, e] = w[e, s] = w[s, e] - amount
        half = w[s, e] / 2.0
        w[s, m] = w[m, s] = w[m, e] = w[e, m] = half
        others = np.ones(g.size, dtype=bool)
        others[[s, e, m]] = False
        for v in (s, e):
            q = others & ~g.infinite[v]
            w[v, q] += amount / 2.0
            w[q, v] = w[v, q]
        assert w[s, e] >= 0.0, "subpath edge became negative"
    return g, report
