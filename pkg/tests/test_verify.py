import pytest

from spp.verify import run_checks
from spp.workspace import generate_random_workspace


@pytest.mark.parametrize("n,curvature", [(1, 1.0), (1, 3.0), (2, 1.0), (5, 3.0), (9, 1.5)])
def test_all_checks_pass(n, curvature):
    checks, run = run_checks(generate_random_workspace(n, 100, curvature, 17), samples=30)
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]
    names = {c.name for c in checks}
    assert {"ieti", "graph", "triangle-inequality", "solution-validity"} <= names
    if n >= 2:
        assert {"ratio-bound", "bound-mst", "bound-e2", "bound-matching", "decoded-length"} <= names


def test_straight_reports_noop():
    checks, _ = run_checks(generate_random_workspace(4, 100, 1.0, 2), samples=5)
    assert checks[0].detail.startswith("no-op")
