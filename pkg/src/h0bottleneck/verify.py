"""
Seeded fuzzing of :func:`bottleneck0` against the reference oracles.

Pair ``k`` of a run draws from substream ``(seed, k)``: both side sizes
uniform on ``0..max_size``, then deaths uniform on ``(0, 2 * size)`` per
side.  Pairs with at most 16 points in total are checked against the
exhaustive oracle for exact equality, larger ones against the matching
oracle to 1e-9 relative.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import algorithm
from .algorithm import CaseTag
from .diagram import PersistenceDiagram
from .oracle import EXHAUSTIVE_MAX_POINTS, bottleneck_exhaustive, bottleneck_matching
from .simulate import substream

__all__ = ["Mismatch", "VerifyReport", "random_pair", "run_verify"]

RELATIVE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Mismatch:
    index: int
    a: list[float]
    b: list[float]
    value: float
    expected: float
    oracle: str

    def to_json(self) -> str:
        return json.dumps({
            "index": self.index, "oracle": self.oracle,
            "value": self.value, "expected": self.expected,
            "a": self.a, "b": self.b,
        }, indent=2)


@dataclass
class VerifyReport:
    count: int
    max_size: int
    seed: int
    exhaustive_checked: int = 0
    matching_checked: int = 0
    tag_hits: Counter = field(default_factory=Counter)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def format(self) -> str:
        lines = [
            f"pairs: {self.count}  max-size: {self.max_size}  seed: {self.seed}",
            f"checked exhaustive: {self.exhaustive_checked}  "
            f"matching: {self.matching_checked}",
            "case hits:",
        ]
        for tag in CaseTag:
            lines.append(f"  {tag.value:<22} {self.tag_hits.get(tag, 0)}")
        lines.append(f"mismatches: {len(self.mismatches)}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def random_pair(seed: int, index: int, max_size: int
                ) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    rng = substream(seed, index)
    na, nb = (int(s) for s in rng.integers(0, max_size, size=2, endpoint=True))
    out = []
    for n in (na, nb):
        deaths = rng.uniform(0.0, 2.0 * n, n) if n else np.empty(0)
        # uniform() can return the left endpoint; redraw rather than drop
        while (deaths <= 0).any():
            deaths[deaths <= 0] = rng.uniform(0.0, 2.0 * n, int((deaths <= 0).sum()))
        out.append(PersistenceDiagram(-np.sort(-deaths)))
    return out[0], out[1]


def run_verify(count: int, max_size: int, seed: int, *,
               distance=None, stop_after: int | None = None) -> VerifyReport:
    """Fuzz ``count`` pairs.  ``distance`` defaults to :func:`bottleneck0`.

    Stops early once ``stop_after`` mismatches have been found (None: never).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    distance = distance or algorithm.bottleneck0
    report = VerifyReport(count, max_size, seed)
    for k in range(count):
        a, b = random_pair(seed, k, max_size)
        result = distance(a, b)
        report.tag_hits.update(result.tags)
        if len(a) + len(b) <= EXHAUSTIVE_MAX_POINTS:
            expected = bottleneck_exhaustive(a, b)
            report.exhaustive_checked += 1
            good = result.value == expected
            oracle = "exhaustive"
        else:
            expected = bottleneck_matching(a, b)
            report.matching_checked += 1
            good = abs(result.value - expected) <= RELATIVE_TOLERANCE * max(
                abs(result.value), abs(expected))
            oracle = "matching"
        if not good:
            report.mismatches.append(Mismatch(k, a.deaths.tolist(), b.deaths.tolist(),
                                              result.value, expected, oracle))
            if stop_after is not None and len(report.mismatches) >= stop_after:
                break
    return report
