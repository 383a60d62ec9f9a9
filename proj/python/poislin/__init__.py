"""Exact formal linearization of Poisson structures with aff(n) linear part."""

from ._core import (
    DimensionError,
    Error,
    InternalError,
    ParseError,
    PreconditionError,
    Structure,
    TailSpanError,
    determinant,
    linearize,
    pfaffian,
    run,
    verify_counterexample,
)

__all__ = [
    "DimensionError",
    "Error",
    "InternalError",
    "ParseError",
    "PreconditionError",
    "Structure",
    "TailSpanError",
    "determinant",
    "linearize",
    "pfaffian",
    "run",
    "verify_counterexample",
]
