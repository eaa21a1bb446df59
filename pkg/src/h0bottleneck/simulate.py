"""
Seeded synthetic zero-birth diagrams.

Deaths are i.i.d. uniform on the open interval ``(0, upper)`` with
``upper = 2 * n_points`` by default.  Randomness comes from numpy's PCG64
seeded through ``SeedSequence(seed, spawn_key=(index,))``: every diagram a
routine generates gets its own substream, numbered in generation order, so
outputs depend only on ``(seed, index)`` and are identical across platforms.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .diagram import PersistenceDiagram

__all__ = [
    "LabeledPair",
    "PairSpec",
    "SimSpec",
    "partner_size_bounds",
    "simulate_diagram",
    "simulate_grid",
    "simulate_pair",
    "substream",
]


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(index,))))


@dataclass(frozen=True)
class SimSpec:
    n_points: int
    death_range_upper: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n_points < 0:
            raise ValueError("n_points must be >= 0")
        if self.death_range_upper is not None and not self.death_range_upper > 0:
            raise ValueError("death_range_upper must be positive")

    @property
    def upper(self) -> float:
        if self.death_range_upper is not None:
            return float(self.death_range_upper)
        return float(2 * max(self.n_points, 1))


@dataclass(frozen=True)
class PairSpec:
    base: SimSpec
    partner_jitter: float = 0.8
    partner_range_rule: Literal["twice-partner-size", "same-as-base"] = "twice-partner-size"

    def __post_init__(self):
        if not 0 <= self.partner_jitter <= 1:
            raise ValueError("partner_jitter must lie in [0, 1]")
        if self.partner_range_rule not in ("twice-partner-size", "same-as-base"):
            raise ValueError(f"unknown partner range rule {self.partner_range_rule!r}")


def _uniform_open(rng: np.random.Generator, upper: float, n: int) -> np.ndarray:
    deaths = rng.uniform(0.0, upper, n)
    bad = ~((deaths > 0) & (deaths < upper))
    while bad.any():
        deaths[bad] = rng.uniform(0.0, upper, int(bad.sum()))
        bad = ~((deaths > 0) & (deaths < upper))
    return deaths


def _draw(rng: np.random.Generator, n: int, upper: float) -> PersistenceDiagram:
    deaths = _uniform_open(rng, upper, n)
    return PersistenceDiagram(-np.sort(-deaths))


def simulate_diagram(spec: SimSpec, index: int = 0) -> PersistenceDiagram:
    return _draw(substream(spec.seed, index), spec.n_points, spec.upper)


def partner_size_bounds(n: int, jitter: float) -> tuple[int, int]:
    # the 1e-9 guards against (1 - 0.8) * 100 == 20.000000000000004
    lo = max(math.ceil((1 - jitter) * n - 1e-9), 1)
    hi = max(math.floor((1 + jitter) * n + 1e-9), lo)
    return lo, hi


def simulate_pair(spec: PairSpec, index: int = 0
                  ) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    """Base diagram plus a partner whose size is jittered uniformly.

    Uses substreams ``2 * index`` (base) and ``2 * index + 1`` (partner size
    and deaths).
    """
    base = spec.base
    if base.n_points < 1:
        raise ValueError("base diagram needs at least one point")
    a = simulate_diagram(base, 2 * index)
    rng = substream(base.seed, 2 * index + 1)
    lo, hi = partner_size_bounds(base.n_points, spec.partner_jitter)
    m = int(rng.integers(lo, hi, endpoint=True))
    upper = 2.0 * m if spec.partner_range_rule == "twice-partner-size" else base.upper
    return a, _draw(rng, m, upper)


class LabeledPair(NamedTuple):
    size_i: int
    size_j: int
    rep: int
    a: PersistenceDiagram
    b: PersistenceDiagram


def simulate_grid(sizes_i: Sequence[int], sizes_j: Sequence[int], reps: int,
                  seed: int) -> Iterator[LabeledPair]:
    """Pairs for every cell ``(i, j)`` with ``i <= j``, ``reps`` per cell.

    Sides get deaths on ``(0, 2 i)`` and ``(0, 2 j)``.  Cells are visited in
    sorted order and each diagram consumes the next substream index.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    index = 0
    for i in sorted(set(sizes_i)):
        for j in sorted(set(sizes_j)):
            if i > j:
                continue
            for rep in range(reps):
                a = simulate_diagram(SimSpec(i, seed=seed), index)
                b = simulate_diagram(SimSpec(j, seed=seed), index + 1)
                index += 2
                yield LabeledPair(i, j, rep, a, b)
