import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_cost_matrix
from spp.matching import MatchingInstance, brute_force_matching, min_perfect_matching


def collinear(xs):
    xs = np.asarray(xs, dtype=float)
    return MatchingInstance(range(len(xs)), np.abs(xs[:, None] - xs[None, :]))


def test_collinear_four():
    inst = collinear([0, 1, 2, 3])
    for solver in (min_perfect_matching, brute_force_matching):
        m = solver(inst)
        assert m.total_cost == 2.0
        assert m.pairs == ((0, 1), (2, 3))


def test_labels_are_preserved():
    inst = MatchingInstance(["a", "b"], [[0, 4], [4, 0]])
    assert min_perfect_matching(inst).pairs == (("a", "b"),)


def test_empty():
    assert min_perfect_matching(MatchingInstance((), np.zeros((0, 0)))).total_cost == 0.0


@pytest.mark.parametrize(
    "cost",
    [
        np.zeros((3, 3)),
        np.array([[0, -1], [-1, 0]]),
        np.array([[0, np.inf], [np.inf, 0]]),
        np.zeros((2, 3)),
    ],
)
def test_invalid_instances(cost):
    with pytest.raises(ValueError):
        MatchingInstance(range(cost.shape[0]), cost)


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_matching(MatchingInstance(range(14), np.ones((14, 14))))


def test_ten_vertices_against_brute_force():
    rng = np.random.default_rng(10)
    for _ in range(20):
        inst = MatchingInstance(range(10), random_cost_matrix(rng, 10))
        assert min_perfect_matching(inst).total_cost == brute_force_matching(inst).total_cost


@settings(max_examples=150, deadline=None)
@given(
    half=st.integers(1, 6),
    seed=st.integers(0, 2**32 - 1),
    integer=st.booleans(),
)
def test_blossom_equals_brute_force(half, seed, integer):
    """Integer costs force many ties, which exercises blossom shrinking."""
    inst = MatchingInstance(range(2 * half), random_cost_matrix(np.random.default_rng(seed), 2 * half, integer))
    fast, slow = min_perfect_matching(inst), brute_force_matching(inst)
    assert fast.total_cost == slow.total_cost
    used = sorted(v for p in fast.pairs for v in p)
    assert used == list(range(2 * half))


@settings(max_examples=30, deadline=None)
@given(half=st.integers(7, 40), seed=st.integers(0, 2**32 - 1))
def test_blossom_equals_networkx(half, seed):
    nx = pytest.importorskip("networkx")
    cost = random_cost_matrix(np.random.default_rng(seed), 2 * half)
    inst = MatchingInstance(range(2 * half), cost)
    g = nx.Graph()
    for a in range(2 * half):
        for b in range(a + 1, 2 * half):
            g.add_edge(a, b, weight=cost[a, b])
    ref = nx.min_weight_matching(g)
    ref_cost = sum(cost[a, b] for a, b in ref)
    assert min_perfect_matching(inst).total_cost == pytest.approx(ref_cost, rel=1e-12)
