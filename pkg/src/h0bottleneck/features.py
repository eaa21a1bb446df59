"""Pairwise distance matrices over diagram collections and their summaries."""

from __future__ import annotations

import csv
import json
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import Executor
from dataclasses import asdict, dataclass
from typing import TextIO

import numpy as np

from .algorithm import bottleneck_distance
from .diagram import PersistenceDiagram

__all__ = [
    "DistanceMatrix",
    "DistributionSummary",
    "pairwise_matrix",
    "summarize_distances",
]


@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.shape != (len(self.labels),) * 2:
            raise ValueError("matrix shape does not match labels")
        if not (np.array_equal(v, v.T) and not np.diagonal(v).any()):
            raise ValueError("distance matrix must be symmetric with zero diagonal")

    def upper_triangle(self) -> np.ndarray:
        return self.values[np.triu_indices(len(self.labels), k=1)]

    def to_csv(self, stream: TextIO) -> None:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["", *self.labels])
        for label, row in zip(self.labels, self.values):
            w.writerow([label, *(repr(float(v)) for v in row)])

    @classmethod
    def from_csv(cls, stream: TextIO) -> DistanceMatrix:
        rows = list(csv.reader(stream))
        labels = tuple(rows[0][1:])
        values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
        return cls(labels, values.reshape(len(labels), len(labels)))


@dataclass(frozen=True)
class DistributionSummary:
    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float
    std_dev: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def pairwise_matrix(diagrams: Mapping[str, PersistenceDiagram]
                    | Sequence[tuple[str, PersistenceDiagram]]
                    | Sequence[PersistenceDiagram],
                    executor: Executor | None = None,
                    distance: Callable = bottleneck_distance) -> DistanceMatrix:
    """Symmetric matrix of bottleneck distances.

    Accepts a label -> diagram mapping, ``(label, diagram)`` pairs, or bare
    diagrams (labelled ``"0"``, ``"1"``, ...).  Only ``i < j`` entries are
    computed; passing an ``executor`` spreads them across its workers without
    affecting the result.
    """
    if isinstance(diagrams, Mapping):
        items = list(diagrams.items())
    else:
        items = [it if isinstance(it, tuple) else (str(k), it)
                 for k, it in enumerate(diagrams)]
    if not items:
        raise ValueError("need at least one diagram")
    labels = tuple(str(k) for k, _ in items)
    dgms = [d for _, d in items]
    n = len(dgms)
    iu, ju = np.triu_indices(n, k=1)
    if executor is None:
        vals = [distance(dgms[i], dgms[j]) for i, j in zip(iu, ju)]
    else:
        vals = list(executor.map(distance, [dgms[i] for i in iu], [dgms[j] for j in ju]))
    m = np.zeros((n, n))
    m[iu, ju] = vals
    m[ju, iu] = vals
    return DistanceMatrix(labels, m)


def summarize_distances(matrix: DistanceMatrix | Iterable[float]) -> DistributionSummary:
    """Summary of the strict upper triangle.

    Sample standard deviation (``n - 1``), taken as 0 for a single pair.
    """
    if isinstance(matrix, DistanceMatrix):
        if len(matrix.labels) < 2:
            raise ValueError("need at least two diagrams")
        v = matrix.upper_triangle()
    else:
        v = np.asarray(list(matrix), dtype=float)
        if v.size == 0:
            raise ValueError("no distances to summarize")
    # sorted so the floating-point sums do not depend on diagram order
    v = np.sort(v)
    q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0])
    std = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    # rounding in the mean must not break min <= mean <= max
    mean = float(np.clip(v.mean(), q[0], q[4]))
    return DistributionSummary(float(q[0]), float(q[1]), float(q[2]), mean,
                               float(q[3]), float(q[4]), std)
