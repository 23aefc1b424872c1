"""Exception hierarchy shared across the package."""


class InputError(ValueError):
    """Bad user-supplied data: out-of-range coordinates, shape mismatches, parse failures."""


class CapabilityError(RuntimeError):
    """The request exceeds a hard size/feasibility limit of an exact routine."""


class ConvergenceError(RuntimeError):
    """An iterative solver stopped without reaching the requested tolerance."""

    def __init__(self, message: str, gap: float | None = None):
        super().__init__(message)
        self.gap = gap


class InternalInvariantError(AssertionError):
    """A theorem-guaranteed property failed to hold; treated as a bug signal."""
