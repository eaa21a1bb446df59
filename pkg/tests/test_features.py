import io
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from h0bottleneck import PersistenceDiagram, bottleneck_exhaustive
from h0bottleneck.features import DistanceMatrix, pairwise_matrix, summarize_distances
from h0bottleneck.simulate import SimSpec, simulate_diagram

D = PersistenceDiagram.from_deaths


def test_single_diagram():
    m = pairwise_matrix({"a": D([1, 2])})
    assert m.values.tolist() == [[0.0]]
    with pytest.raises(ValueError):
        summarize_distances(m)


def test_identical_pair():
    m = pairwise_matrix([D([3]), D([3])])
    assert m.labels == ("0", "1") and not m.values.any()


def test_three_diagrams():
    dgms = {"p": D([6]), "q": D([6, 2]), "r": D([10, 2])}
    m = pairwise_matrix(dgms)
    assert m.values[0, 1] == 1 and m.values[0, 2] == 4 and m.values[1, 2] == 4
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        a, b = list(dgms.values())[i], list(dgms.values())[j]
        assert m.values[i, j] == bottleneck_exhaustive(a, b)
    s = summarize_distances(m)
    assert (s.min, s.max, s.mean) == (1, 4, 3)


def test_summary_examples():
    s = summarize_distances(pairwise_matrix([D([10]), D([10, 10])]))
    assert (s.min, s.q1, s.median, s.mean, s.q3, s.max, s.std_dev) == (5, 5, 5, 5, 5, 5, 0)
    z = summarize_distances(pairwise_matrix([D([1])] * 3))
    assert (z.min, z.q1, z.median, z.mean, z.q3, z.max, z.std_dev) == (0,) * 7
    with pytest.raises(ValueError):
        summarize_distances([])


def test_ordering_invariants_on_random_collection():
    dgms = [simulate_diagram(SimSpec(int(n), seed=1), i)
            for i, n in enumerate(np.random.default_rng(0).integers(1, 40, 8))]
    m = pairwise_matrix(dgms)
    v = m.values
    assert np.array_equal(v, v.T) and not np.diagonal(v).any()
    k = len(dgms)
    for i in range(k):
        for j in range(k):
            for h in range(k):
                assert v[i, j] <= v[i, h] + v[h, j] + 1e-12
    s = summarize_distances(m)
    assert s.min <= s.q1 <= s.median <= s.q3 <= s.max and s.std_dev >= 0
    assert s.min <= s.mean <= s.max

    perm = np.random.default_rng(1).permutation(k)
    pm = pairwise_matrix([dgms[p] for p in perm])
    assert np.array_equal(pm.values, v[np.ix_(perm, perm)])
    assert summarize_distances(pm) == s

    with ThreadPoolExecutor(4) as ex:
        assert np.array_equal(pairwise_matrix(dgms, executor=ex).values, v)


def test_csv_round_trip():
    m = pairwise_matrix({"a": D([1]), "b": D([4, 2]), "c": D([])})
    buf = io.StringIO()
    m.to_csv(buf)
    assert buf.getvalue().splitlines()[0] == ",a,b,c"
    back = DistanceMatrix.from_csv(io.StringIO(buf.getvalue()))
    assert back.labels == m.labels and np.array_equal(back.values, m.values)


def test_matrix_validation():
    with pytest.raises(ValueError):
        DistanceMatrix(("a", "b"), np.array([[0, 1], [2, 0.0]]))
    with pytest.raises(ValueError):
        pairwise_matrix([])
