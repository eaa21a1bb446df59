"""
Timing sweeps and their aggregation.

Only the distance computation is timed.  Generation and I/O never are;
canonicalization (sorting) is excluded unless ``include_sort=True``, in
which case each timed call starts from a shuffled copy of the deaths.
Every pair gets one untimed warm-up call first.  Timings run sequentially
on the calling thread.

Aggregation works on medians per size, as in the complexity plots the
sweeps reproduce; quartiles use linear interpolation between order
statistics (numpy's default ``"linear"`` method).
"""

from __future__ import annotations

import csv
import json
import time
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import asdict, dataclass, fields
from typing import Literal, TextIO

import numpy as np

from .algorithm import bottleneck0
from .diagram import PersistenceDiagram, canonicalize
from .simulate import SimSpec, simulate_diagram, simulate_grid, substream

__all__ = [
    "SETTINGS",
    "BenchRecord",
    "FitReport",
    "FiveNumber",
    "fit",
    "fit_curve",
    "medians_by_size",
    "read_records",
    "summarize",
    "sweep",
    "sweep_equal_size",
    "sweep_heatmap",
    "time_pair",
    "write_records",
]

Model = Literal["linear", "quadratic", "power"]


@dataclass(frozen=True)
class BenchRecord:
    size_a: int
    size_b: int
    range_a: float
    range_b: float
    seed: int
    rep: int
    wall_seconds: float


CSV_HEADER = [f.name for f in fields(BenchRecord)]


def time_pair(a: PersistenceDiagram, b: PersistenceDiagram, reps: int = 1, *,
              seed: int = 0, range_a: float = float("nan"), range_b: float = float("nan"),
              include_sort: bool = False, rep_offset: int = 0,
              timer: Callable[[], float] = time.perf_counter) -> list[BenchRecord]:
    """``reps`` wall-clock timings of ``bottleneck0(a, b)`` after one warm-up."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if include_sort:
        rng = substream(seed, 0)
        raw_a = rng.permutation(a.deaths)
        raw_b = rng.permutation(b.deaths)

        def call():
            bottleneck0(canonicalize(raw_a), canonicalize(raw_b))
    else:
        def call():
            bottleneck0(a, b)

    call()
    out = []
    for rep in range(reps):
        t0 = timer()
        call()
        dt = timer() - t0
        out.append(BenchRecord(len(a), len(b), range_a, range_b, seed, rep_offset + rep,
                               max(dt, 0.0)))
    return out


# setting -> (size of second diagram, range of second diagram), both from n
SETTINGS: dict[str, Callable[[int], tuple[int, float]]] = {
    "equal-size": lambda n: (n, 2.0 * n),
    "half-range": lambda n: (n, 1.0 * n),
    "half-size": lambda n: (n // 2, 2.0 * n),
    "half-size-half-range": lambda n: (n // 2, 1.0 * n),
}


def sweep(setting: str, sizes: Sequence[int], reps: int, seed: int, *,
          include_sort: bool = False,
          progress: Callable[[int, int], None] | None = None) -> list[BenchRecord]:
    """For each ``n``, ``reps`` fresh pairs, each timed once.

    The first diagram always has ``n`` points on ``(0, 2n)``; ``setting``
    picks the second diagram's size and range (see :data:`SETTINGS`).
    """
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if setting not in SETTINGS:
        raise ValueError(f"unknown sweep setting {setting!r}")
    second = SETTINGS[setting]
    records = []
    index = 0
    for n in sizes:
        m, upper_b = second(n)
        for rep in range(reps):
            a = simulate_diagram(SimSpec(n, 2.0 * n, seed), index)
            b = simulate_diagram(SimSpec(m, upper_b, seed), index + 1)
            index += 2
            records += time_pair(a, b, 1, seed=seed, range_a=2.0 * n, range_b=upper_b,
                                 include_sort=include_sort, rep_offset=rep)
        if progress is not None:
            progress(n, reps)
    return records


def sweep_equal_size(sizes: Sequence[int], reps: int, seed: int, **kw) -> list[BenchRecord]:
    return sweep("equal-size", sizes, reps, seed, **kw)


def sweep_heatmap(sizes: Sequence[int], reps: int, seed: int, *,
                  include_sort: bool = False,
                  records: list[BenchRecord] | None = None) -> dict[tuple[int, int], float]:
    """Median time per cell ``(i, j)``, ``i <= j``.  Raw records go to ``records``."""
    if not sizes:
        raise ValueError("sizes must be nonempty")
    cells = defaultdict(list)
    for pair in simulate_grid(sizes, sizes, reps, seed):
        recs = time_pair(pair.a, pair.b, 1, seed=seed, range_a=2.0 * pair.size_i,
                         range_b=2.0 * pair.size_j, include_sort=include_sort,
                         rep_offset=pair.rep)
        cells[pair.size_i, pair.size_j].append(recs[0].wall_seconds)
        if records is not None:
            records += recs
    return {k: float(np.median(v)) for k, v in cells.items()}


@dataclass(frozen=True)
class FiveNumber:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    count: int


def _five(values) -> FiveNumber:
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot summarize an empty group")
    q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0], method="linear")
    return FiveNumber(*map(float, q), count=int(v.size))


def _larger(r: BenchRecord) -> int:
    return max(r.size_a, r.size_b)


def summarize(records: Iterable[BenchRecord] | Iterable[float],
              key: Callable[[BenchRecord], object] = _larger):
    """Five-number summaries.

    Given bare numbers, returns one :class:`FiveNumber`; given records,
    returns ``{group key: FiveNumber}`` (default key: the larger size).
    """
    records = list(records)
    if records and not isinstance(records[0], BenchRecord):
        return _five(records)
    groups = defaultdict(list)
    for r in records:
        groups[key(r)].append(r.wall_seconds)
    if not groups:
        raise ValueError("no records to summarize")
    return {k: _five(v) for k, v in sorted(groups.items())}


def medians_by_size(records: Iterable[BenchRecord]) -> tuple[np.ndarray, np.ndarray]:
    groups = defaultdict(list)
    for r in records:
        groups[_larger(r)].append(r.wall_seconds)
    sizes = np.array(sorted(groups), dtype=float)
    return sizes, np.array([np.median(groups[int(s)]) for s in sizes])


@dataclass(frozen=True)
class FitReport:
    """``coefficients`` are ``(intercept, slope)`` for linear,
    ``(c0, c1, c2)`` for quadratic and ``(c, alpha)`` for ``t = c n**alpha``.
    R^2 is measured on the scale the fit was made in (log-log for power).
    """

    model: str
    coefficients: tuple[float, ...]
    r_squared: float

    def predict(self, n):
        n = np.asarray(n, dtype=float)
        c = self.coefficients
        if self.model == "power":
            return c[0] * n ** c[1]
        return sum(ci * n ** i for i, ci in enumerate(c))


def _r_squared(y: np.ndarray, fitted: np.ndarray) -> float:
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0:
        return 1.0 if ss_res == 0 else 0.0
    return min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)


def fit_curve(n, t, model: Model) -> FitReport:
    """Least-squares fit of times ``t`` against sizes ``n``."""
    n = np.asarray(n, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.unique(n).size < 3:
        raise ValueError("fit needs at least 3 distinct sizes")
    if model in ("linear", "quadratic"):
        deg = 1 if model == "linear" else 2
        design = np.vander(n, deg + 1, increasing=True)
        coef, *_ = np.linalg.lstsq(design, t, rcond=None)
        return FitReport(model, tuple(map(float, coef)), _r_squared(t, design @ coef))
    if model == "power":
        if (n <= 0).any() or (t <= 0).any():
            raise ValueError("power fit needs positive sizes and times")
        ln, lt = np.log(n), np.log(t)
        design = np.vander(ln, 2, increasing=True)
        (log_c, alpha), *_ = np.linalg.lstsq(design, lt, rcond=None)
        return FitReport(model, (float(np.exp(log_c)), float(alpha)),
                         _r_squared(lt, design @ np.array([log_c, alpha])))
    raise ValueError(f"unknown model {model!r}")


def fit(records: Iterable[BenchRecord], model: Model) -> FitReport:
    """Fit the median time per (larger) diagram size."""
    return fit_curve(*medians_by_size(records), model)


def write_records(records: Iterable[BenchRecord], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.size_a, r.size_b, repr(r.range_a), repr(r.range_b), r.seed, r.rep,
                    repr(r.wall_seconds)])


def read_records(stream: TextIO) -> list[BenchRecord]:
    reader = csv.DictReader(stream)
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    return [BenchRecord(int(row["size_a"]), int(row["size_b"]), float(row["range_a"]),
                        float(row["range_b"]), int(row["seed"]), int(row["rep"]),
                        float(row["wall_seconds"])) for row in reader]


def report_json(records: Sequence[BenchRecord], *, include_sort: bool,
                models: Sequence[Model] = ("linear", "quadratic", "power"),
                extra: dict | None = None) -> str:
    """Summaries and fits as JSON text.  Fits needing >= 3 sizes are skipped otherwise."""
    out = {"sort_included": include_sort, "records": len(records)}
    out.update(extra or {})
    out["summaries"] = {str(k): asdict(v) for k, v in summarize(records).items()}
    fits = {}
    for m in models:
        try:
            fits[m] = asdict(fit(records, m))
        except ValueError as err:
            fits[m] = {"error": str(err)}
    out["fits"] = fits
    return json.dumps(out, indent=2)
