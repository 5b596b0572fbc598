"""Engine exceptions.

Management commands map these onto exit codes: input problems exit with 2,
broken internal invariants with 3.
"""


class IntersectionBodyError(Exception):
    """Base class for every error raised by the engine."""

    exit_code = 3


class DimensionError(IntersectionBodyError, ValueError):
    """Operands have incompatible shapes."""


class PreconditionError(IntersectionBodyError, ValueError):
    """An operation was called outside its domain."""


class PolytopeValidationError(IntersectionBodyError):
    """The input does not describe a valid full-dimensional V-polytope."""

    exit_code = 2


class InvalidEdgeError(IntersectionBodyError):
    """An edge has no symbolic section vertex (zero length or through 0)."""


class ConsistencyError(IntersectionBodyError):
    """A mathematical invariant of the pipeline was violated."""
