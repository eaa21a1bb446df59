"""
Reference bottleneck distances computed the slow, obviously-correct ways.

Two independent routes:

``bottleneck_exhaustive``
    minimises the bottleneck cost over every way of pairing points of one
    diagram with points of the other (everything unpaired goes to the
    diagonal).  Exponential; guarded to tiny inputs.

``bottleneck_matching``
    binary search over the finite set of possible edge weights, deciding at
    each threshold whether the bipartite graph of points plus diagonal
    projections has a perfect matching (Hopcroft-Karp).

Neither route sorts, ranks, or otherwise relies on the structure exploited
by :mod:`h0bottleneck.algorithm`.
"""

from __future__ import annotations

import functools

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .algorithm import _as_deaths

__all__ = [
    "EXHAUSTIVE_MAX_POINTS",
    "MATCHING_MAX_POINTS",
    "MatchingGraph",
    "OracleSizeError",
    "bottleneck_exhaustive",
    "bottleneck_matching",
    "build_candidates",
    "feasible",
]

EXHAUSTIVE_MAX_POINTS = 16
MATCHING_MAX_POINTS = 5000


class OracleSizeError(ValueError):
    pass


def bottleneck_exhaustive(a, b) -> float:
    """Minimum over all pairing patterns of the maximum per-point cost.

    A pattern picks, for each point of ``a`` in turn, either the diagonal or
    one still-unused point of ``b``; the leftover points of ``b`` go to the
    diagonal.  Memoising on (position in ``a``, set of used points of ``b``)
    evaluates every pattern without enumerating them one by one.
    """
    A = _as_deaths(a).tolist()
    B = _as_deaths(b).tolist()
    if len(A) + len(B) > EXHAUSTIVE_MAX_POINTS:
        raise OracleSizeError(
            f"exhaustive oracle limited to {EXHAUSTIVE_MAX_POINTS} points in total")
    if len(A) > len(B):
        A, B = B, A
    m = len(B)
    cost = [[abs(ai - bj) for bj in B] for ai in A]
    half_a = [ai / 2 for ai in A]
    full = (1 << m) - 1

    @functools.cache
    def leftover(mask: int) -> float:
        return max((B[j] / 2 for j in range(m) if not mask >> j & 1), default=0.0)

    @functools.cache
    def best(i: int, mask: int) -> float:
        if i == len(A):
            return leftover(mask)
        value = max(half_a[i], best(i + 1, mask))
        row = cost[i]
        free = full & ~mask
        while free:
            bit = free & -free
            free ^= bit
            c = row[bit.bit_length() - 1]
            if c < value:
                value = min(value, max(c, best(i + 1, mask | bit)))
        return value

    return best(0, 0)


def build_candidates(a, b) -> np.ndarray:
    """Sorted distinct values of ``{|a_i - b_j|} U {a_i/2} U {b_j/2} U {0}``."""
    A = _as_deaths(a)
    B = _as_deaths(b)
    parts = [np.zeros(1), A / 2, B / 2, np.abs(np.subtract.outer(A, B)).ravel()]
    return np.unique(np.concatenate(parts))


class MatchingGraph:
    """Complete bipartite graph between ``X + proj(Y)`` and ``Y + proj(X)``.

    Left vertices are the points of ``X`` followed by the diagonal
    projections of ``Y``; right vertices are the points of ``Y`` followed by
    the projections of ``X``.  A death ``d`` is the point ``(0, d)`` and its
    projection is ``(d/2, d/2)``.  Edges between two projections weigh 0,
    all others weigh the sup-norm distance.
    """

    def __init__(self, a, b):
        self.x = _as_deaths(a)
        self.y = _as_deaths(b)
        self.p = self.x.size
        self.q = self.y.size

    @property
    def size(self) -> int:
        return self.p + self.q

    def _coords(self):
        x, y = self.x, self.y
        left = np.concatenate([np.column_stack([np.zeros(self.p), x]),
                               np.column_stack([y / 2, y / 2])])
        right = np.concatenate([np.column_stack([np.zeros(self.q), y]),
                                np.column_stack([x / 2, x / 2])])
        return left, right

    def weight_matrix(self) -> np.ndarray:
        """Dense ``size x size`` weight matrix straight from the definition."""
        left, right = self._coords()
        w = np.abs(left[:, None, :] - right[None, :, :]).max(axis=2)
        w[self.p:, self.q:] = 0.0
        return w

    def dense_threshold_graph(self, r: float) -> csr_matrix:
        return csr_matrix(self.weight_matrix() <= r)

    def threshold_graph(self, r: float) -> csr_matrix:
        """A sparse subgraph of ``G[r]`` with a perfect matching iff ``G[r]`` has one.

        Kept edges: point-point edges within ``r`` unless both points lie
        within ``2r`` of zero, each point to its own projection when within
        ``r``, and projection-projection edges mirroring the kept
        point-point edges.

        If ``G[r]`` has a perfect matching, a point matched to another
        point's projection may use its own instead (that edge is never
        heavier); a point-point pair of two near-diagonal points can be
        replaced by both own-projection edges; the projections of the
        remaining point-point pairs then match each other along the mirrored
        edges.
        """
        p, q, x, y = self.p, self.q, self.x, self.y
        rows, cols = [], []
        if p and q:
            # y sorted descending; y[j] in [x_i - r, x_i + r] is a contiguous block
            asc = y[::-1]
            # widened by a few ulps, then filtered exactly on |x - y| <= r
            slack = 4 * np.finfo(float).eps * (np.abs(x) + r)
            lo = q - np.searchsorted(asc, x + r + slack, side="right")
            hi = q - np.searchsorted(asc, x - r - slack, side="left")
            # a near-diagonal x (x <= 2r) only keeps partners y > 2r
            n_big_y = q - np.searchsorted(asc, 2 * r, side="right")
            hi = np.where(x > 2 * r, hi, np.minimum(hi, n_big_y))
            counts = np.maximum(hi - lo, 0)
            total = int(counts.sum())
            if total:
                xi = np.repeat(np.arange(p), counts)
                starts = np.repeat(lo - np.cumsum(counts) + counts, counts)
                yj = starts + np.arange(total)
                keep = np.abs(x[xi] - y[yj]) <= r
                xi, yj = xi[keep], yj[keep]
                rows += [xi, p + yj]
                cols += [yj, q + xi]
        own_x = np.flatnonzero(x / 2 <= r)
        own_y = np.flatnonzero(y / 2 <= r)
        rows += [own_x, p + own_y]
        cols += [q + own_x, own_y]
        r_idx = np.concatenate(rows) if rows else np.empty(0, int)
        c_idx = np.concatenate(cols) if cols else np.empty(0, int)
        n = self.size
        return csr_matrix((np.ones(r_idx.size, dtype=bool), (r_idx, c_idx)), shape=(n, n))


def _has_perfect_matching(graph: csr_matrix) -> bool:
    if graph.shape[0] == 0:
        return True
    if np.diff(graph.indptr).min() == 0:
        return False
    # Hopcroft-Karp; -1 marks an unmatched row
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool((match >= 0).all())


def feasible(a, b, r: float, dense: bool = False) -> bool:
    """Whether some bijection of the augmented diagrams has every cost ``<= r``."""
    if r < 0:
        return False
    g = MatchingGraph(a, b)
    graph = g.dense_threshold_graph(r) if dense else g.threshold_graph(r)
    return _has_perfect_matching(graph)


def bottleneck_matching(a, b, candidates: np.ndarray | None = None) -> float:
    """Smallest candidate weight ``r`` at which :func:`feasible` holds."""
    A = _as_deaths(a)
    B = _as_deaths(b)
    if A.size + B.size > MATCHING_MAX_POINTS:
        raise OracleSizeError(
            f"matching oracle limited to {MATCHING_MAX_POINTS} points in total")
    if candidates is None:
        candidates = build_candidates(A, B)
    else:
        candidates = np.unique(np.asarray(candidates, dtype=np.float64))
    g = MatchingGraph(A, B)
    lo, hi = 0, candidates.size - 1
    if not _has_perfect_matching(g.threshold_graph(candidates[hi])):
        raise ValueError("candidate set does not contain a feasible threshold")
    while lo < hi:
        mid = (lo + hi) // 2
        if _has_perfect_matching(g.threshold_graph(candidates[mid])):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])
