import numpy as np
import pytest
from hypothesis import strategies as st

from spp.workspace import Point, Subpath, Workspace, generate_random_workspace


def straight(x0, y0, x1, y1):
    return Subpath.straight(Point(x0, y0), Point(x1, y1))


@pytest.fixture
def two_straight():
    """(0,0)-(1,0) and (2,0)-(3,0): the hand-checked two-subpath instance."""
    return Workspace((straight(0, 0, 1, 0), straight(2, 0, 3, 0)))


@pytest.fixture
def curved_pair():
    """A long curved subpath (0,0)-(1,0) of arc 5 beside a straight (0,1)-(1,1)."""
    return Workspace((Subpath(Point(0, 0), Point(1, 0), 5.0), straight(0, 1, 1, 1)))


@pytest.fixture
def single():
    return Workspace((straight(0, 0, 1, 0),))


@st.composite
def workspaces(draw, min_n=2, max_n=7, curvatures=(1.0, 1.5, 3.0)):
    """Random workspaces through the package generator (seed-driven, so shrinkable)."""
    n = draw(st.integers(min_n, max_n))
    curvature = draw(st.sampled_from(curvatures))
    seed = draw(st.integers(0, 2**31 - 1))
    return generate_random_workspace(n, 100.0, curvature, seed)


def random_cost_matrix(rng: np.random.Generator, k: int, integer: bool = False) -> np.ndarray:
    if integer:
        a = rng.integers(0, 20, size=(k, k)).astype(float)
    else:
        a = rng.random((k, k)) * 100
    c = np.triu(a, 1)
    return c + c.T


# Acceptance checks append "PASS/FAIL ..." lines here; they are repeated in
# the terminal summary so they survive output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
