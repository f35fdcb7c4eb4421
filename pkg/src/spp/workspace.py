"""Problem instances: subpaths in a 2-D workspace."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class WorkspaceError(ValueError):
    """Raised for malformed or physically impossible workspaces."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise WorkspaceError(f"non-finite coordinate in {self!r}")

    def distance(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Subpath:
    """A curve with two distinct endpoints.

    Only the arc length of the curve matters to the solvers; its shape is
    never modelled.
    """

    start: Point
    end: Point
    arc_length: float

    def __post_init__(self):
        if self.start == self.end:
            raise WorkspaceError("subpath start and end coincide")
        if not math.isfinite(self.arc_length):
            raise WorkspaceError("arc length must be finite")
        if self.arc_length < self.chord:
            raise WorkspaceError(
                f"arc length {self.arc_length!r} is shorter than the "
                f"endpoint distance {self.chord!r}"
            )

    @property
    def chord(self) -> float:
        return self.start.distance(self.end)

    @classmethod
    def straight(cls, start: Point, end: Point) -> Subpath:
        return cls(start, end, start.distance(end))


@dataclass(frozen=True)
class Workspace:
    subpaths: tuple[Subpath, ...]

    def __post_init__(self):
        object.__setattr__(self, "subpaths", tuple(self.subpaths))
        if not self.subpaths:
            raise WorkspaceError("a workspace needs at least one subpath")

    def __len__(self) -> int:
        return len(self.subpaths)

    @property
    def n(self) -> int:
        return len(self.subpaths)

    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Start and end coordinates as two ``(n, 2)`` arrays."""
        starts = np.array([[p.start.x, p.start.y] for p in self.subpaths], dtype=float)
        ends = np.array([[p.end.x, p.end.y] for p in self.subpaths], dtype=float)
        return starts, ends

    def arc_lengths(self) -> np.ndarray:
        return np.array([p.arc_length for p in self.subpaths], dtype=float)

    def to_dict(self) -> dict:
        return {
            "subpaths": [
                {
                    "start": [p.start.x, p.start.y],
                    "end": [p.end.x, p.end.y],
                    "length": p.arc_length,
                }
                for p in self.subpaths
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> Workspace:
        if not isinstance(data, dict) or not isinstance(data.get("subpaths"), list):
            raise WorkspaceError('expected an object with a "subpaths" list')
        subpaths = []
        for k, item in enumerate(data["subpaths"]):
            try:
                start = Point(*map(float, item["start"]))
                end = Point(*map(float, item["end"]))
                length = item.get("length")
            except (KeyError, TypeError, ValueError) as exc:
                raise WorkspaceError(f"subpath {k}: {exc}") from exc
            if length is None:
                subpaths.append(Subpath.straight(start, end))
            else:
                subpaths.append(Subpath(start, end, float(length)))
        return cls(tuple(subpaths))


def load_workspace(path: str | Path) -> Workspace:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}: {exc}") from exc
    return Workspace.from_dict(data)


def save_workspace(ws: Workspace, path: str | Path) -> None:
    # json writes floats with repr(), which round-trips doubles exactly
    Path(path).write_text(json.dumps(ws.to_dict(), indent=1) + "\n", encoding="utf-8")


def generate_random_workspace(
    n: int, extent: float = 100.0, curvature_max: float = 1.0, seed: int = 0
) -> Workspace:
    """Random subpaths with endpoints uniform in ``[0, extent]^2``.

    Each arc length is the endpoint distance stretched by a factor drawn
    uniformly from ``[1, curvature_max]``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if extent <= 0:
        raise ValueError("extent must be positive")
    if curvature_max < 1:
        raise ValueError("curvature_max must be >= 1")
    rng = np.random.default_rng(seed)
    subpaths = []
    while len(subpaths) < n:
        sx, sy, ex, ey = rng.uniform(0.0, extent, size=4)
        factor = rng.uniform(1.0, curvature_max)
        start, end = Point(float(sx), float(sy)), Point(float(ex), float(ey))
        if start == end:
            continue
        chord = start.distance(end)
        subpaths.append(Subpath(start, end, max(chord, chord * float(factor))))
    return Workspace(tuple(subpaths))
