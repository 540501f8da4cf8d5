"""Exception hierarchy shared by all modules.

DomainError covers violations of mathematical preconditions (the CLI maps
these to exit code 1); FormatError covers malformed textual input (exit
code 2).
"""


class PtolemyLabError(Exception):
    """Base class for all package errors."""


class DomainError(PtolemyLabError):
    """A mathematically invalid request (bad vertex, zero divisor, ...)."""


class DimensionError(DomainError):
    """Operands live over different numbers of generators."""


class NotDivisible(DomainError):
    """Exact Laurent division failed; no Laurent quotient exists."""


class LaurentViolation(DomainError):
    """An exchange relation did not divide exactly.

    The Laurent phenomenon guarantees this never happens for genuine seed
    mutation, so seeing it signals an implementation bug rather than bad
    user input.
    """


class InvalidVertexError(DomainError):
    """Mutation requested at a frozen or out-of-range vertex."""


class EvaluationError(DomainError):
    """Evaluation point has a zero coordinate (negative exponents)."""


class DegenerateSubspaceError(DomainError):
    """A 2 x n matrix had rank below 2."""


class GeometryError(DomainError):
    """Degenerate geometric input (coincident points, bad decoration)."""


class FormatError(PtolemyLabError):
    """Malformed textual input: unparsable polynomial, ragged grid, ..."""
