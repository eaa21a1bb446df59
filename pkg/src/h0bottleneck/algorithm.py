"""
Exact dimension-zero bottleneck distance without solving a matching.

Both diagrams are sorted from largest to smallest death and paired by rank;
the surplus points of the larger diagram go to the diagonal.  The distance
is then read off from a handful of comparisons on the rank-pairing cost
vector ``z``:

* if the largest unpaired death dominates every paired cost, its half is
  the answer;
* otherwise the pair ``l`` carrying the largest cost is either kept (the
  answer is ``max(z)``) or sent to the diagonal (the answer is
  ``max(x[l], y[l]) / 2``), unless some earlier pair is at least as costly
  as the diagonal move, in which case every pair from ``l`` onwards is sent
  to the diagonal and the same analysis repeats on the shorter prefix.

Every comparison is exact; no tolerance is involved.  The working prefix
only ever shrinks from the right, so prefix maxima of ``z`` computed once
answer each step's argmax queries in constant time, and each step's
"second largest" query is a max over a slice disjoint from all previous
ones.  The whole computation is linear in the size of the smaller diagram
after sorting.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .diagram import PersistenceDiagram

__all__ = [
    "CaseTag",
    "DistanceResult",
    "TraceStep",
    "UncanonicalDiagramError",
    "WorkState",
    "bottleneck0",
    "bottleneck_distance",
    "trace_bottleneck0",
]


class CaseTag(enum.Enum):
    IDENTICAL_ZERO = "IdenticalZero"
    EMPTY_SMALLER = "EmptySmaller"
    TAIL_DOMINATES = "TailDominates"
    SINGLETON_ENTRY = "SingletonEntry"
    CASE1_MAX_Z = "Case1-MaxZ"
    CASE2_HALF_MAX = "Case2-HalfMax"
    CASE3_ORDERED_HALF_MAX = "Case3-OrderedHalfMax"
    # Records trim iterations; never a terminal case.
    CASE4_TRIMMED = "Case4-Trimmed"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DistanceResult:
    value: float
    terminal_case: CaseTag
    trims: int = 0

    @property
    def tags(self) -> tuple[CaseTag, ...]:
        """Terminal case, plus CASE4_TRIMMED when any trim happened."""
        if self.trims:
            return (self.terminal_case, CaseTag.CASE4_TRIMMED)
        return (self.terminal_case,)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class TraceStep:
    """One pass of the case analysis.  ``l`` is a 0-based index."""

    n: int
    l: int
    d_temp: float
    zeta: float | None
    h: float
    branch: CaseTag


class UncanonicalDiagramError(ValueError):
    pass


class WorkState:
    """Mutable view of the rank pairing restricted to a working prefix.

    ``x`` is the smaller diagram, ``y`` the larger, ``z[i] = |x[i] - y[i]|``.
    Only indices below ``n`` are live; trimming lowers ``n`` and leaves the
    arrays untouched.
    """

    __slots__ = ("x", "y", "z", "n", "l", "d_temp", "_prefix_max", "_prefix_arg")

    def __init__(self, x: np.ndarray, y: np.ndarray):
        n = x.size
        z = np.abs(x - y[:n])
        prefix_max = np.maximum.accumulate(z)
        record = np.empty(n, dtype=bool)
        record[0] = True
        np.greater(z[1:], prefix_max[:-1], out=record[1:])
        # lowest index attaining each prefix maximum
        prefix_arg = np.maximum.accumulate(np.where(record, np.arange(n), 0))
        self.x, self.y, self.z = x, y, z
        self._prefix_max = prefix_max
        self._prefix_arg = prefix_arg
        self.n = n
        self._locate()

    def _locate(self) -> None:
        self.l = int(self._prefix_arg[self.n - 1])
        self.d_temp = float(self.z[self.l])

    def half_max(self) -> float:
        """``max(x[l], y[l]) / 2``: cost of sending pair ``l`` to the diagonal."""
        return max(float(self.x[self.l]), float(self.y[self.l])) / 2

    def max_before_l(self) -> float:
        return float(self._prefix_max[self.l - 1]) if self.l > 0 else -math.inf

    def second_largest(self) -> float:
        """Largest live ``z`` once the single entry at ``l`` is removed."""
        after = self.z[self.l + 1:self.n]
        right = float(after.max()) if after.size else -math.inf
        return max(self.max_before_l(), right)

    def trim(self) -> None:
        """Drop pairs ``l, l+1, ..., n-1`` from the working prefix."""
        self.n = self.l
        self._locate()


def _as_deaths(diagram) -> np.ndarray:
    if isinstance(diagram, PersistenceDiagram):
        return diagram.deaths
    arr = np.asarray(diagram, dtype=np.float64)
    if arr.ndim != 1:
        raise UncanonicalDiagramError("expected a 1-D sequence of death times")
    if arr.size and not (np.isfinite(arr).all() and arr[-1] >= 0):
        raise UncanonicalDiagramError("death times must be finite and nonnegative")
    if arr.size > 1 and not (arr[:-1] >= arr[1:]).all():
        raise UncanonicalDiagramError("death times must be sorted descending")
    # trailing zeros are diagonal points
    return arr[:np.count_nonzero(arr > 0)]


def _run(a: np.ndarray, b: np.ndarray, steps: list | None = None,
         _trim_offset: int = 0) -> DistanceResult:
    x, y = (a, b) if a.size <= b.size else (b, a)
    if x.size == y.size and np.array_equal(x, y):
        return DistanceResult(0.0, CaseTag.IDENTICAL_ZERO)
    if x.size == 0:
        return DistanceResult(float(y[0]) / 2, CaseTag.EMPTY_SMALLER)

    state = WorkState(x, y)
    n0 = state.n
    if n0 < y.size:
        tail = float(y[n0]) / 2
        if state.d_temp < tail:
            return DistanceResult(tail, CaseTag.TAIL_DOMINATES)

    trims = 0
    while True:
        h = state.half_max()
        if state.n == 1:
            if steps is not None:
                steps.append(TraceStep(1, state.l, state.d_temp, None, h,
                                       CaseTag.SINGLETON_ENTRY))
            return DistanceResult(min(state.d_temp, h), CaseTag.SINGLETON_ENTRY, trims)

        zeta = state.second_largest()
        if zeta < h < state.d_temp:
            branch = CaseTag.CASE2_HALF_MAX
        elif zeta >= h:
            # every live index m with z[m] >= h satisfies m >= l
            if state.max_before_l() < h:
                branch = CaseTag.CASE3_ORDERED_HALF_MAX
            else:
                branch = CaseTag.CASE4_TRIMMED
        else:
            branch = CaseTag.CASE1_MAX_Z

        if steps is not None:
            steps.append(TraceStep(state.n, state.l, state.d_temp, zeta, h, branch))

        if branch is CaseTag.CASE1_MAX_Z:
            return DistanceResult(state.d_temp, branch, trims)
        if branch is not CaseTag.CASE4_TRIMMED:
            return DistanceResult(h, branch, trims)

        # Pairs l.. are now on the diagonal at cost <= h.  The surplus tail of
        # y never re-enters: every later answer is >= y[l]/2 >= y[n0]/2.
        if _trim_offset:
            # fault injection for the verification harness's own tests
            state.n = max(1, state.l + _trim_offset)
            state._locate()
        else:
            state.trim()
        trims += 1


def bottleneck0(a, b) -> DistanceResult:
    """Exact bottleneck distance between two zero-birth persistence diagrams.

    ``a`` and ``b`` are :class:`PersistenceDiagram` instances or 1-D arrays
    of death times already sorted descending (trailing zeros are ignored).
    Either may be empty and the order of the arguments does not matter.

    >>> bottleneck0(PersistenceDiagram.from_deaths([10, 2]),
    ...             PersistenceDiagram.from_deaths([4, 1])).value
    5.0
    """
    return _run(_as_deaths(a), _as_deaths(b))


def bottleneck_distance(a, b) -> float:
    return _run(_as_deaths(a), _as_deaths(b)).value


def trace_bottleneck0(a, b) -> tuple[list[TraceStep], DistanceResult]:
    """Like :func:`bottleneck0`, also returning one :class:`TraceStep` per pass."""
    steps: list[TraceStep] = []
    result = _run(_as_deaths(a), _as_deaths(b), steps)
    return steps, result
