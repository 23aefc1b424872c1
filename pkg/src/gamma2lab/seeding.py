"""Deterministic seed derivation.

All randomness in the package flows from one explicit 64-bit seed; sub-seeds
are derived with a splitmix64-style mixer so that identical seeds reproduce
identical outputs bit-for-bit.
"""

MASK64 = (1 << 64) - 1


def _mix(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def split_seed(seed: int, *indices: int) -> int:
    """Derive a child seed from `seed` and a path of integer indices."""
    z = _mix(seed & MASK64)
    for idx in indices:
        z = _mix((z ^ _mix(idx & MASK64)) & MASK64)
    return z
