"""Dense symmetric weighted graphs over role-tagged nodes.

Node ids follow a fixed layout for ``n`` subpaths: ``0..n-1`` are the
start nodes, ``n..2n-1`` the end nodes and ``2n..3n-1`` the middle nodes
(absent in a Stage-1 graph).  Subpath indices are 0-based in code.
"""

from __future__ import annotations

import csv
import enum
import functools
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@functools.total_ordering
class Weight:
    """Edge weight: a finite non-negative real or infinity.

    Infinity is its own tagged state, so arithmetic with it is explicit.
    Subtracting from an infinite weight is a programming error.
    """

    __slots__ = ("_value",)

    def __init__(self, value: float | None):
        if value is not None:
            value = float(value)
            if not value >= 0.0 or value == float("inf"):
                raise ValueError(f"finite weight must be a non-negative real, got {value!r}")
        self._value = value

    @classmethod
    def finite(cls, value: float) -> Weight:
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> float:
        if self._value is None:
            raise ValueError("infinite weight has no finite value")
        return self._value

    def __add__(self, other: Weight) -> Weight:
        if not isinstance(other, Weight):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return Weight(self._value + other._value)

    def __sub__(self, other):
        if self.is_infinite:
            raise ArithmeticError("subtraction from an infinite weight")
        if isinstance(other, Weight):
            other = other.value
        return Weight(self._value - float(other))

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        if self.is_infinite:
            return False
        return other.is_infinite or self._value < other._value

    def __hash__(self):
        return hash(("Weight", self._value))

    def __repr__(self):
        return "Infinite" if self.is_infinite else f"Finite({self._value!r})"


INFINITE = Weight(None)


class Role(enum.Enum):
    START = "s"
    END = "e"
    MIDDLE = "m"


@dataclass(frozen=True)
class NodeRole:
    role: Role
    subpath: int

    def __str__(self):
        return f"{self.role.value}_{self.subpath + 1}"


class SppGraph:
    """Complete graph on ``2n`` or ``3n`` nodes.

    ``values`` holds the finite weights; ``infinite`` flags entries that are
    infinite (their ``values`` slot is kept at 0 and must not be read).
    Diagonal entries are undefined.
    """

    def __init__(self, n: int, values: np.ndarray, infinite: np.ndarray | None = None):
        values = np.asarray(values, dtype=float)
        size = values.shape[0]
        if values.shape != (size, size) or size not in (2 * n, 3 * n):
            raise ValueError(f"bad weight matrix shape {values.shape} for n={n}")
        if infinite is None:
            infinite = np.zeros((size, size), dtype=bool)
        self.n = n
        self.values = values
        self.infinite = np.asarray(infinite, dtype=bool)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    @property
    def has_middles(self) -> bool:
        return self.size == 3 * self.n

    def start(self, i: int) -> int:
        return i

    def end(self, i: int) -> int:
        return self.n + i

    def middle(self, i: int) -> int:
        if not self.has_middles:
            raise ValueError("graph has no middle nodes")
        return 2 * self.n + i

    def role(self, node: int) -> NodeRole:
        if not 0 <= node < self.size:
            raise IndexError(f"node {node} out of range")
        kind, i = divmod(node, self.n)
        return NodeRole((Role.START, Role.END, Role.MIDDLE)[kind], i)

    def is_middle(self, node: int) -> bool:
        return node >= 2 * self.n

    def copy(self) -> SppGraph:
        return SppGraph(self.n, self.values.copy(), self.infinite.copy())

    def edge_weight(self, a: int, b: int) -> Weight:
        if a == b:
            raise ValueError(f"diagonal entry ({a}, {a}) is undefined")
        if not (0 <= a < self.size and 0 <= b < self.size):
            raise IndexError(f"node pair ({a}, {b}) out of range")
        if self.infinite[a, b]:
            return INFINITE
        return Weight(self.values[a, b])

    def is_finite(self, a: int, b: int) -> bool:
        return not self.infinite[a, b]

    def with_inf(self) -> np.ndarray:
        """Weight matrix with ``np.inf`` for infinite entries and on the diagonal.

        Only for min-searches and comparisons; never do arithmetic that
        could subtract infinities.
        """
        out = np.where(self.infinite, np.inf, self.values)
        np.fill_diagonal(out, np.inf)
        return out

    def check_invariants(self) -> None:
        off = ~np.eye(self.size, dtype=bool)
        if not np.array_equal(self.values, self.values.T):
            raise AssertionError("weight matrix is not symmetric")
        if not np.array_equal(self.infinite, self.infinite.T):
            raise AssertionError("infinite mask is not symmetric")
        finite = off & ~self.infinite
        if not (np.all(np.isfinite(self.values[finite])) and np.all(self.values[finite] >= 0)):
            raise AssertionError("finite weights must be non-negative reals")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        labels = [str(self.role(v)) for v in range(self.size)]
        writer.writerow([""] + labels)
        for a in range(self.size):
            row = [labels[a]]
            for b in range(self.size):
                if a == b:
                    row.append("")
                elif self.infinite[a, b]:
                    row.append("inf")
                else:
                    row.append(f"{self.values[a, b]:.9g}")
            writer.writerow(row)
        return buf.getvalue()


@dataclass(frozen=True)
class Tour:
    nodes: tuple[int, ...]
    length: Weight


def tour_length(g: SppGraph, nodes: Sequence[int]) -> Weight:
    """Length of the closed tour through ``nodes`` (last node returns to the first)."""
    nodes = list(nodes)
    if len(nodes) < 3:
        raise ValueError("a tour needs at least three nodes")
    total = 0.0
    for a, b in zip(nodes, nodes[1:] + nodes[:1]):
        if a == b:
            raise ValueError(f"node {a} repeated on adjacent positions")
        if g.infinite[a, b]:
            return INFINITE
        total += g.values[a, b]
    return Weight(total)


def tour_length_float(g: SppGraph, nodes: Iterable[int]) -> float:
    """``tour_length`` as a plain float, ``inf`` for infinite tours."""
    w = tour_length(g, list(nodes))
    return float("inf") if w.is_infinite else w.value
