"""Shared exception types."""


class ClusterPoissonError(Exception):
    """Base class for all library errors."""


class InvariantViolation(ClusterPoissonError):
    """A structural invariant that should hold by construction was broken.

    Raised e.g. when a mutated matrix loses skew-symmetrizability or a
    cluster-variable expansion comes out with non-integer coefficients.
    """


class DimensionMismatch(ClusterPoissonError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""
