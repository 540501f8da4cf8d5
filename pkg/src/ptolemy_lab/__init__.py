"""Exact workbench for cluster mutation, friezes, and Ptolemy geometry."""

__version__ = "0.1.0"

from .errors import (
    DegenerateSubspaceError,
    DimensionError,
    DomainError,
    EvaluationError,
    FormatError,
    GeometryError,
    InvalidVertexError,
    LaurentViolation,
    NotDivisible,
    PtolemyLabError,
)
from .laurent import LaurentPoly, kernel_backend, parse_laurent

__all__ = [
    "DegenerateSubspaceError",
    "DimensionError",
    "DomainError",
    "EvaluationError",
    "FormatError",
    "GeometryError",
    "InvalidVertexError",
    "LaurentViolation",
    "NotDivisible",
    "PtolemyLabError",
    "LaurentPoly",
    "kernel_backend",
    "parse_laurent",
]
