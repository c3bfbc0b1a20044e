class WaringError(Exception):
    """Base class for library errors."""


class PreconditionError(WaringError, ValueError):
    """Input violates a documented precondition (CLI exit code 2)."""


class NonReducedError(PreconditionError):
    """The hypersurface is not reduced (positive-dimensional singular locus)."""


class CheckMismatch(WaringError, RuntimeError):
    """An internal cross-check disagreed (CLI exit code 3)."""
