import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from h0bottleneck import (
    CaseTag,
    PersistenceDiagram,
    UncanonicalDiagramError,
    bottleneck0,
    bottleneck_distance,
    bottleneck_exhaustive,
    bottleneck_matching,
    build_candidates,
    trace_bottleneck0,
)

D = PersistenceDiagram.from_deaths

# (A, B, value, terminal case, trims); values frozen from the exhaustive oracle
WORKED = [
    ([3], [3], 0.0, CaseTag.IDENTICAL_ZERO, 0),
    ([], [7, 3], 3.5, CaseTag.EMPTY_SMALLER, 0),
    ([6], [6, 2], 1.0, CaseTag.TAIL_DOMINATES, 0),
    ([10, 1], [5, 4], 5.0, CaseTag.CASE1_MAX_Z, 0),
    ([10, 2], [4, 1], 5.0, CaseTag.CASE2_HALF_MAX, 0),
    # z = [4, 8], second largest 4 < h = 5 < 8: resolved by the half-max case
    ([20, 10], [16, 2], 5.0, CaseTag.CASE2_HALF_MAX, 0),
    ([20, 10, 7], [19, 2, 1], 5.0, CaseTag.CASE3_ORDERED_HALF_MAX, 0),
    ([20, 10], [26, 1], 6.0, CaseTag.SINGLETON_ENTRY, 1),
    ([1], [10, 9, 8], 5.0, CaseTag.SINGLETON_ENTRY, 0),
    ([10], [11, 9], 4.5, CaseTag.TAIL_DOMINATES, 0),
]


@pytest.mark.parametrize("a, b, value, case, trims", WORKED)
def test_worked_examples(a, b, value, case, trims):
    result = bottleneck0(D(a), D(b))
    assert result.value == value
    assert result.terminal_case is case
    assert result.trims == trims
    assert bottleneck_exhaustive(D(a), D(b)) == value


@pytest.mark.parametrize("a, b, value, case, trims", WORKED)
def test_worked_examples_swapped(a, b, value, case, trims):
    assert bottleneck0(D(b), D(a)) == bottleneck0(D(a), D(b))


def test_trace_with_trim():
    steps, result = trace_bottleneck0(D([20, 10]), D([26, 1]))
    first, last = steps
    # l is 0-based: z = [6, 9] peaks at index 1
    assert (first.l, first.d_temp, first.zeta, first.h) == (1, 9.0, 6.0, 5.0)
    assert first.branch is CaseTag.CASE4_TRIMMED
    assert last.branch is CaseTag.SINGLETON_ENTRY
    assert (last.d_temp, last.h) == (6.0, 13.0)
    assert result.value == 6.0


def test_trace_identical_is_empty():
    steps, result = trace_bottleneck0(D([3]), D([3]))
    assert steps == [] and result.value == 0


def test_trace_single_iteration():
    steps, result = trace_bottleneck0(D([10, 2]), D([4, 1]))
    assert [s.branch for s in steps] == [CaseTag.CASE2_HALF_MAX]
    assert result.value == 5.0


def test_trace_matches_plain_result():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = (D(rng.uniform(0, 20, rng.integers(0, 12))) for _ in range(2))
        assert trace_bottleneck0(a, b)[1] == bottleneck0(a, b)


def test_both_empty():
    r = bottleneck0(D([]), D([]))
    assert r.value == 0 and r.terminal_case is CaseTag.IDENTICAL_ZERO


def test_equal_multisets_with_duplicates():
    assert bottleneck0(D([4, 4, 1]), D([1, 4, 4])).value == 0


@pytest.mark.parametrize("a, b", [
    # d_temp equals half the largest unpaired death: the strict test falls through
    ([6], [8, 4]),
    ([10, 5], [12, 6, 4]),
    ([4, 1], [5, 2, 2]),
])
def test_tail_boundary_equality(a, b):
    x, y = D(a), D(b)
    assert bottleneck0(x, y).value == bottleneck_exhaustive(x, y) == y.deaths[len(x)] / 2


def test_accepts_descending_arrays_and_ignores_trailing_zeros():
    assert bottleneck_distance([10.0, 2.0, 0.0], np.array([4.0, 1.0])) == 5.0


@pytest.mark.parametrize("bad", [[1.0, 2.0], [[1.0]], [3.0, np.nan], [2.0, -1.0]])
def test_uncanonical_input_rejected(bad):
    with pytest.raises(UncanonicalDiagramError):
        bottleneck0(bad, [1.0])


def test_ties_in_z_match_oracle():
    # several pairs share the maximal cost; l is the lowest of them
    cases = [([9, 5, 3], [6, 2, 0.5]), ([8, 8, 8], [4, 4, 4]), ([10, 6, 2], [7, 3, 5])]
    for a, b in cases:
        x, y = D(a), D(b)
        assert bottleneck0(x, y).value == bottleneck_exhaustive(x, y)


# -- properties ------------------------------------------------------------

small_diagram = st.lists(st.floats(0.01, 100, allow_nan=False), max_size=7).map(D)
grid_diagram = st.lists(st.integers(1, 6).map(float), max_size=7).map(D)


@settings(max_examples=300)
@given(st.one_of(small_diagram, grid_diagram), st.one_of(small_diagram, grid_diagram))
def test_matches_exhaustive_oracle(a, b):
    assert bottleneck0(a, b).value == bottleneck_exhaustive(a, b)


@given(small_diagram, small_diagram)
def test_symmetry(a, b):
    assert bottleneck0(a, b).value == bottleneck0(b, a).value


@given(small_diagram, small_diagram)
def test_zero_iff_equal(a, b):
    assert (bottleneck0(a, b).value == 0) == (a == b)
    assert bottleneck0(a, a).value == 0


@given(small_diagram, small_diagram, small_diagram)
def test_triangle_inequality(a, b, c):
    assert bottleneck_distance(a, c) <= bottleneck_distance(a, b) + bottleneck_distance(b, c) + 1e-12


@given(small_diagram, small_diagram)
def test_value_is_a_candidate(a, b):
    assert bottleneck0(a, b).value in set(build_candidates(a, b).tolist())


@given(small_diagram, small_diagram, st.integers(0, 4), st.integers(0, 4))
def test_zero_points_are_neutral(a, b, za, zb):
    ref = bottleneck_distance(a, b)
    padded_a = np.concatenate([a.deaths, np.zeros(za)])
    padded_b = np.concatenate([b.deaths, np.zeros(zb)])
    assert bottleneck_distance(padded_a, padded_b) == ref
    assert bottleneck_distance(D(padded_a), D(padded_b)) == ref


@given(small_diagram, small_diagram)
def test_tail_floor(a, b):
    x, y = sorted((a, b), key=len)
    if len(x) < len(y):
        assert bottleneck_distance(a, b) >= y.deaths[len(x)] / 2


@given(small_diagram, small_diagram, st.integers(-6, 6))
def test_power_of_two_scaling_is_exact(a, b, k):
    c = 2.0 ** k
    assert bottleneck_distance(a.scaled(c), b.scaled(c)) == c * bottleneck_distance(a, b)


def test_termination_bound():
    rng = np.random.default_rng(3)
    for _ in range(300):
        a = D(rng.uniform(0, 40, rng.integers(1, 30)))
        b = D(rng.uniform(0, 80, rng.integers(1, 30)))
        assert bottleneck0(a, b).trims < min(len(a), len(b))


def test_many_trims_terminate_and_agree():
    # half-size, equal-range pairs trim one pair at a time for a long stretch
    rng = np.random.default_rng(0)
    a = D(rng.uniform(0, 4000, 2000))
    b = D(rng.uniform(0, 4000, 1000))
    result = bottleneck0(a, b)
    assert result.trims > 50
    assert result.value == bottleneck_matching(a, b)
