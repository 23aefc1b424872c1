"""gamma2lab: certified gamma-2 norm bounds and extremal-combinatorics
experiments on Boolean matrices."""

from .boolmat import BoolMatrix, DegeneracyResult
from .errors import (
    CapabilityError,
    ConvergenceError,
    InputError,
    InternalInvariantError,
)

__all__ = [
    "BoolMatrix",
    "DegeneracyResult",
    "InputError",
    "CapabilityError",
    "ConvergenceError",
    "InternalInvariantError",
]
