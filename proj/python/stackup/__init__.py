"""Exact solvers for the FIFO stack-up problem."""

from ._core import (
    ALGORITHMS,
    CapacityError,
    Instance,
    ParseError,
    PreconditionError,
    export_lp,
    generate,
    places_via_dpw,
    sequence_graph,
    solve,
    stats,
    verify,
)

__all__ = [
    "ALGORITHMS",
    "CapacityError",
    "Instance",
    "ParseError",
    "PreconditionError",
    "export_lp",
    "generate",
    "places_via_dpw",
    "sequence_graph",
    "solve",
    "stats",
    "verify",
]
