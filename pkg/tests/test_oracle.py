import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from h0bottleneck import (
    MatchingGraph,
    OracleSizeError,
    PersistenceDiagram,
    bottleneck_exhaustive,
    bottleneck_matching,
    build_candidates,
    feasible,
)

D = PersistenceDiagram.from_deaths


def literal_enumeration(a, b):
    """Every (subset of a, equal-size subset of b, permutation) pattern, one by one."""
    A, B = list(a), list(b)
    best = np.inf
    for k in range(min(len(A), len(B)) + 1):
        for sa in itertools.combinations(range(len(A)), k):
            for sb in itertools.combinations(range(len(B)), k):
                rest = [A[i] / 2 for i in range(len(A)) if i not in sa]
                rest += [B[j] / 2 for j in range(len(B)) if j not in sb]
                base = max(rest, default=0.0)
                for perm in itertools.permutations(sb):
                    cost = max([abs(A[i] - B[j]) for i, j in zip(sa, perm)], default=0.0)
                    best = min(best, max(base, cost))
    return best


def test_exhaustive_examples():
    assert bottleneck_exhaustive(D([6]), D([6, 2])) == 1.0
    assert bottleneck_exhaustive(D([]), D([])) == 0.0
    assert bottleneck_exhaustive(D([10, 2]), D([4, 1])) == 5.0


def test_exhaustive_guard():
    with pytest.raises(OracleSizeError):
        bottleneck_exhaustive(D(range(1, 10)), D(range(1, 9)))


tiny = st.lists(st.floats(0.01, 50, allow_nan=False), max_size=4).map(D)
tiny_grid = st.lists(st.integers(1, 5).map(float), max_size=4).map(D)


@settings(max_examples=200)
@given(st.one_of(tiny, tiny_grid), st.one_of(tiny, tiny_grid))
def test_exhaustive_equals_literal_enumeration(a, b):
    assert bottleneck_exhaustive(a, b) == literal_enumeration(a, b)


@pytest.mark.parametrize("a, b, expected", [
    ([2], [3], [0, 1, 1.5]),
    ([], [4], [0, 2]),
    # |x - y| = {5, 6, 4, 3}, halves {5, 0.5, 2.5, 2}, plus 0
    ([10, 1], [5, 4], [0, 0.5, 2, 2.5, 3, 4, 5, 6]),
])
def test_candidates(a, b, expected):
    assert build_candidates(D(a), D(b)).tolist() == expected


def test_feasible_examples():
    assert feasible(D([6]), D([6, 2]), 1)
    assert not feasible(D([6]), D([6, 2]), 0.5)
    for dense in (False, True):
        assert feasible(D([6]), D([6, 2]), 1, dense=dense)
        assert not feasible(D([6]), D([6, 2]), 0.5, dense=dense)


@given(tiny, tiny)
def test_feasible_at_max_death(a, b):
    r = max([*a, *b], default=0.0)
    assert feasible(a, b, r) and feasible(a, b, r, dense=True)


@pytest.mark.parametrize("a, b, expected", [
    ([10, 1], [5, 4], 5.0), ([3], [3], 0.0), ([1], [10, 9, 8], 5.0)])
def test_matching_examples(a, b, expected):
    assert bottleneck_matching(D(a), D(b)) == expected


def test_matching_guard():
    big = D(np.arange(1, 2600, dtype=float))
    with pytest.raises(OracleSizeError):
        bottleneck_matching(big, big)


small = st.lists(st.floats(0.01, 60, allow_nan=False), max_size=8).map(D)
small_grid = st.lists(st.integers(1, 8).map(float), max_size=8).map(D)


@settings(max_examples=200)
@given(st.one_of(small, small_grid), st.one_of(small, small_grid))
def test_cross_oracle_agreement(a, b):
    assert bottleneck_matching(a, b) == bottleneck_exhaustive(a, b)


@settings(max_examples=100)
@given(st.one_of(small, small_grid), st.one_of(small, small_grid))
def test_sparse_graph_equivalent_to_dense(a, b):
    for r in build_candidates(a, b):
        assert feasible(a, b, r) == feasible(a, b, r, dense=True)


@settings(max_examples=100)
@given(small, small)
def test_feasibility_monotone_and_tight(a, b):
    cands = build_candidates(a, b)
    flags = [feasible(a, b, r) for r in cands]
    # once feasible, feasible for every larger threshold
    first = flags.index(True)
    assert all(flags[first:]) and not any(flags[:first])
    value = bottleneck_matching(a, b)
    assert value == cands[first]
    assert feasible(a, b, value)
    if first:
        assert not feasible(a, b, cands[first - 1])


@given(small, small, st.lists(st.floats(0, 100, allow_nan=False), max_size=10))
def test_candidate_superset_gives_same_answer(a, b, extra):
    cands = np.concatenate([build_candidates(a, b), extra, [1e9]])
    assert bottleneck_matching(a, b, cands) == bottleneck_matching(a, b)


def test_matching_graph_structure():
    g = MatchingGraph(D([6, 3]), D([5]))
    w = g.weight_matrix()
    assert w.shape == (3, 3) == (g.size, g.size)
    # rows: x=6, x=3, proj(5); cols: y=5, proj(6), proj(3)
    assert w[0, 0] == 1 and w[1, 0] == 2
    assert w[0, 1] == 3 and w[1, 2] == 1.5
    assert w[0, 2] == max(1.5, 6 - 1.5)
    assert w[2, 0] == 2.5
    assert w[2, 1] == w[2, 2] == 0


def test_feasible_negative_threshold():
    assert not feasible(D([1]), D([1]), -1)
