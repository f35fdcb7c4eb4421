"""Decoded SPP answers and the workspace-length convention shared by all solvers.

Traversal convention: a forward subpath is entered at its start and left at
its end; a reverse subpath is entered at its end and left at its start.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .workspace import Workspace


class Orientation(str, enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


@dataclass(frozen=True)
class SppSolution:
    order: tuple[tuple[int, Orientation], ...]  # 0-based subpath index
    length: float
    h_trail: tuple[int, ...] = ()
    stage_weights: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {
            "order": [
                {"subpath": i + 1, "orientation": o.value} for i, o in self.order
            ],
            "length": self.length,
        }
        if self.stage_weights:
            out["stage_weights"] = dict(self.stage_weights)
        return out


def entry_exit(ws: Workspace, i: int, o: Orientation):
    p = ws.subpaths[i]
    return (p.start, p.end) if o is Orientation.FORWARD else (p.end, p.start)


def workspace_length(ws: Workspace, order: Sequence[tuple[int, Orientation]]) -> float:
    """Arc lengths plus straight connectors, closing back to the first subpath."""
    k = len(order)
    parts = []
    for pos, (i, o) in enumerate(order):
        parts.append(ws.subpaths[i].arc_length)
        _, exit_pt = entry_exit(ws, i, o)
        nxt_entry, _ = entry_exit(ws, *order[(pos + 1) % k])
        parts.append(exit_pt.distance(nxt_entry))
    return math.fsum(parts)


def order_to_tour(n: int, order: Sequence[tuple[int, Orientation]]) -> list[int]:
    """Hamiltonian node tour of G'/G'' that walks the subpaths in ``order``."""
    tour = []
    for i, o in order:
        s, e, m = i, n + i, 2 * n + i
        tour += [s, m, e] if o is Orientation.FORWARD else [e, m, s]
    return tour


def check_order(n: int, order: Sequence[tuple[int, Orientation]]) -> None:
    seen = sorted(i for i, _ in order)
    if seen != list(range(n)):
        raise ValueError("order must visit every subpath exactly once")


def canonical_order(order: Sequence[tuple[int, Orientation]]) -> tuple:
    """Same closed tour, read so the lowest subpath index comes first, forward."""
    order = list(order)
    if not order:
        return ()
    k = min(range(len(order)), key=lambda p: order[p][0])
    if order[k][1] is Orientation.REVERSE:
        flip = {Orientation.FORWARD: Orientation.REVERSE, Orientation.REVERSE: Orientation.FORWARD}
        order = [(i, flip[o]) for i, o in reversed(order)]
        k = len(order) - 1 - k
    return tuple(order[k:] + order[:k])


def solution_from_order(ws: Workspace, order, **extra) -> SppSolution:
    order = canonical_order([(int(i), Orientation(o)) for i, o in order])
    check_order(ws.n, order)
    return SppSolution(
        order=order,
        length=workspace_length(ws, order),
        h_trail=tuple(order_to_tour(ws.n, order)),
        **extra,
    )


def connector_matrix(ws: Workspace) -> np.ndarray:
    """Distances between endpoint pairs indexed by (i, o) -> 2*i + o.

    ``C[2i+a, 2j+b]`` is the connector from the exit of subpath i in
    orientation a to the entry of subpath j in orientation b
    (0 = forward, 1 = reverse).
    """
    starts, ends = ws.endpoints()
    n = ws.n
    exits = np.empty((2 * n, 2))
    entries = np.empty((2 * n, 2))
    exits[0::2], exits[1::2] = ends, starts
    entries[0::2], entries[1::2] = starts, ends
    diff = exits[:, None, :] - entries[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])
