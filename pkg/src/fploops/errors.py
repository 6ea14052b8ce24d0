"""Shared exception types."""


class GuardLimitError(RuntimeError):
    """An exhaustive computation was refused because it exceeds a configured guard.

    Callers may re-invoke with an explicit override (``force=True`` or a larger
    guard value) if they accept the cost.
    """


class StructuralFailureError(RuntimeError):
    """Computed data falsified an assumption the construction relies on.

    Examples: the eigenspace at the top eigenvalue is not one-dimensional, a
    component that should be a positive integer is not, a generating-function
    coefficient that counts something comes out fractional.  The message always
    carries the offending exact value.
    """
