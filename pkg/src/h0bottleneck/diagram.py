"""
Dimension-zero persistence diagrams: types, CSV parsing, canonicalization,
and the elementary matching costs between death times.

With every birth at zero a diagram is fully described by its multiset of
death times.  The canonical form keeps those deaths as a read-only float64
array sorted from largest to smallest, with zero deaths (points already on
the diagonal) removed.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal, TextIO

import numpy as np

__all__ = [
    "DiagramError",
    "DiagramParseError",
    "DiagramValidationError",
    "PersistencePoint",
    "PersistenceDiagram",
    "ValidationPolicy",
    "canonicalize",
    "parse_diagram",
    "read_diagram",
    "write_diagram",
    "pair_cost",
    "diagonal_cost",
    "prefers_diagonal",
]

Format = Literal["deaths", "pairs"]


class DiagramError(ValueError):
    """Base class for problems with diagram input.  ``row`` is 1-based, or None."""

    def __init__(self, message: str, row: int | None = None, kind: str = "invalid"):
        self.row = row
        self.kind = kind
        where = f"row {row}: " if row is not None else ""
        super().__init__(where + message)


class DiagramParseError(DiagramError):
    """A row could not be read as numbers."""


class DiagramValidationError(DiagramError):
    """Numbers were read but violate the diagram contract or the policy."""


@dataclass(frozen=True)
class ValidationPolicy:
    """How to treat inputs outside the zero-birth, finite-death contract.

    ``zero_tolerance`` is the largest absolute birth still accepted as zero
    under the ``"reject"`` birth policy.
    """

    on_nonzero_birth: Literal["reject", "coerce"] = "reject"
    on_infinite_death: Literal["reject", "drop"] = "reject"
    zero_tolerance: float = 0.0

    def __post_init__(self):
        if self.on_nonzero_birth not in ("reject", "coerce"):
            raise ValueError(f"unknown nonzero-birth policy {self.on_nonzero_birth!r}")
        if self.on_infinite_death not in ("reject", "drop"):
            raise ValueError(f"unknown infinite-death policy {self.on_infinite_death!r}")
        if not self.zero_tolerance >= 0:
            raise ValueError("zero_tolerance must be >= 0")


DEFAULT_POLICY = ValidationPolicy()


@dataclass(frozen=True)
class PersistencePoint:
    birth: float
    death: float

    def __post_init__(self):
        if not (self.birth >= 0 and self.death >= self.birth):
            raise DiagramValidationError(
                f"need 0 <= birth <= death, got ({self.birth}, {self.death})")


class PersistenceDiagram:
    """Canonical multiset of positive, finite death times, sorted descending.

    Build instances with :meth:`from_deaths`, :meth:`from_pairs` or
    :func:`parse_diagram`; the constructor trusts its input.
    """

    __slots__ = ("_deaths",)

    def __init__(self, deaths: np.ndarray):
        deaths = np.asarray(deaths, dtype=np.float64)
        deaths.setflags(write=False)
        self._deaths = deaths

    @classmethod
    def from_deaths(cls, deaths: Iterable[float],
                    policy: ValidationPolicy = DEFAULT_POLICY) -> PersistenceDiagram:
        return canonicalize(deaths, policy)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]] | np.ndarray,
                   policy: ValidationPolicy = DEFAULT_POLICY) -> PersistenceDiagram:
        arr = np.asarray(pairs, dtype=np.float64)
        if arr.size == 0:
            return cls(np.empty(0))
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DiagramValidationError("pairs must have shape (n, 2)")
        deaths = [_checked_pair_death(b, d, policy, row=i + 1)
                  for i, (b, d) in enumerate(arr)]
        return canonicalize(deaths, policy)

    @property
    def deaths(self) -> np.ndarray:
        return self._deaths

    def points(self) -> list[PersistencePoint]:
        return [PersistencePoint(0.0, float(d)) for d in self._deaths]

    def scaled(self, factor: float) -> PersistenceDiagram:
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return PersistenceDiagram(self._deaths * factor)

    def __len__(self) -> int:
        return self._deaths.size

    def __iter__(self):
        return iter(self._deaths.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return np.array_equal(self._deaths, other._deaths)

    __hash__ = None

    def __repr__(self) -> str:
        if len(self) <= 8:
            return f"PersistenceDiagram({self._deaths.tolist()})"
        return f"PersistenceDiagram(<{len(self)} deaths, max={self._deaths[0]!r}>)"


def canonicalize(deaths: Iterable[float] | np.ndarray,
                 policy: ValidationPolicy = DEFAULT_POLICY) -> PersistenceDiagram:
    """Validate death times, drop zeros, and sort descending.

    Already-canonical diagrams pass through unchanged, so the operation is
    idempotent.
    """
    if isinstance(deaths, PersistenceDiagram):
        return deaths
    arr = np.array(deaths if isinstance(deaths, np.ndarray) else list(deaths),
                   dtype=np.float64).ravel()
    if np.isnan(arr).any():
        row = int(np.flatnonzero(np.isnan(arr))[0]) + 1
        raise DiagramValidationError("death is NaN", row=row, kind="nan-death")
    if (arr < 0).any():
        row = int(np.flatnonzero(arr < 0)[0]) + 1
        raise DiagramValidationError(f"negative death {arr[row - 1]!r}", row=row,
                                     kind="negative-death")
    inf = np.isinf(arr)
    if inf.any():
        if policy.on_infinite_death == "reject":
            row = int(np.flatnonzero(inf)[0]) + 1
            raise DiagramValidationError("infinite death", row=row, kind="infinite-death")
        arr = arr[~inf]
    arr = arr[arr > 0]
    # descending; equal values are interchangeable so stability is irrelevant
    arr = -np.sort(-arr)
    return PersistenceDiagram(arr)


def _checked_pair_death(birth: float, death: float, policy: ValidationPolicy,
                        row: int | None) -> float:
    if math.isnan(birth) or math.isnan(death):
        raise DiagramValidationError("NaN in birth/death pair", row=row, kind="nan-death")
    if death < birth:
        raise DiagramValidationError(f"death {death!r} precedes birth {birth!r}", row=row,
                                     kind="death-before-birth")
    if (birth != 0 and policy.on_nonzero_birth == "reject"
            and abs(birth) > policy.zero_tolerance):
        raise DiagramValidationError(f"nonzero birth {birth!r}", row=row,
                                     kind="nonzero-birth")
    if death < 0:
        raise DiagramValidationError(f"negative death {death!r}", row=row,
                                     kind="negative-death")
    if math.isinf(death) and policy.on_infinite_death == "reject":
        raise DiagramValidationError("infinite death", row=row, kind="infinite-death")
    return death


def _parse_float(token: str, row: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise DiagramParseError(f"malformed number {token.strip()!r}", row=row,
                                kind="malformed-number") from None


def _looks_numeric(fields: Sequence[str]) -> bool:
    try:
        for f in fields:
            float(f)
    except ValueError:
        return False
    return True


def parse_diagram(text: str | TextIO, format: Format = "deaths",
                  policy: ValidationPolicy = DEFAULT_POLICY) -> PersistenceDiagram:
    """Read a diagram from CSV text.

    ``format="deaths"`` expects one death per line; ``format="pairs"``
    expects ``birth,death`` per line with an optional header, detected by a
    non-numeric first row.  Blank lines are skipped.  Errors carry the
    1-based physical row number.
    """
    if format not in ("deaths", "pairs"):
        raise ValueError(f"unknown diagram format {format!r}")
    stream = io.StringIO(text) if isinstance(text, str) else text
    deaths: list[float] = []
    first = True
    for row, fields in enumerate(csv.reader(stream), start=1):
        fields = [f.strip() for f in fields]
        if not fields or all(f == "" for f in fields):
            continue
        if format == "deaths":
            if len(fields) != 1:
                raise DiagramParseError(f"expected 1 field, got {len(fields)}", row=row,
                                        kind="field-count")
            death = _parse_float(fields[0], row)
            if math.isnan(death):
                raise DiagramValidationError("death is NaN", row=row, kind="nan-death")
            if death < 0:
                raise DiagramValidationError(f"negative death {death!r}", row=row,
                                             kind="negative-death")
            if math.isinf(death) and policy.on_infinite_death == "reject":
                raise DiagramValidationError("infinite death", row=row,
                                             kind="infinite-death")
            deaths.append(death)
        else:
            if first and not _looks_numeric(fields):
                first = False
                continue
            if len(fields) != 2:
                raise DiagramParseError(f"expected 2 fields, got {len(fields)}", row=row,
                                        kind="field-count")
            birth, death = (_parse_float(f, row) for f in fields)
            deaths.append(_checked_pair_death(birth, death, policy, row))
        first = False
    return canonicalize(deaths, policy)


def read_diagram(path, format: Format = "deaths",
                 policy: ValidationPolicy = DEFAULT_POLICY) -> PersistenceDiagram:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_diagram(fh, format, policy)


def write_diagram(diagram: PersistenceDiagram, stream: TextIO,
                  format: Format = "deaths") -> None:
    """Write with ``repr`` precision so the file parses back bit-identically."""
    for d in diagram:
        stream.write(f"{d!r}\n" if format == "deaths" else f"0.0,{d!r}\n")


def pair_cost(d1: float, d2: float) -> float:
    """Sup-norm cost of matching two off-diagonal points: ``|d1 - d2|``."""
    return abs(d1 - d2)


def diagonal_cost(d: float) -> float:
    """Cost of sending the point with death ``d`` to the diagonal."""
    return d / 2


def prefers_diagonal(d1: float, d2: float) -> bool:
    """True iff sending both points to the diagonal beats pairing them."""
    return max(d1, d2) > 2 * min(d1, d2)
