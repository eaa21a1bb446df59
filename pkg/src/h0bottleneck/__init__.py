"""Exact dimension-zero bottleneck distance between persistence diagrams."""

from .algorithm import (
    CaseTag,
    DistanceResult,
    TraceStep,
    UncanonicalDiagramError,
    WorkState,
    bottleneck0,
    bottleneck_distance,
    trace_bottleneck0,
)
from .diagram import (
    DiagramError,
    DiagramParseError,
    DiagramValidationError,
    PersistenceDiagram,
    PersistencePoint,
    ValidationPolicy,
    canonicalize,
    diagonal_cost,
    pair_cost,
    parse_diagram,
    prefers_diagonal,
    read_diagram,
    write_diagram,
)
from .oracle import (
    MatchingGraph,
    OracleSizeError,
    bottleneck_exhaustive,
    bottleneck_matching,
    build_candidates,
    feasible,
)

__version__ = "0.1.0"
