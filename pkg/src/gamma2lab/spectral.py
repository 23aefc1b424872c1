"""Dense real linear algebra: singular values, Schatten norms, matrix products.

Matrices are plain 2-D numpy float arrays.  Singular values below
1e-10 * sigma_1 are clamped to zero so that small-p Schatten norms stay
stable.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

CLAMP_REL = 1e-10


def as_matrix(A) -> np.ndarray:
    out = np.asarray(A, dtype=np.float64)
    if out.ndim != 2:
        raise InputError("expected a 2-D matrix")
    if out.size == 0:
        raise InputError("expected a nonempty matrix")
    if not np.isfinite(out).all():
        raise InputError("matrix has non-finite entries")
    return out


def singular_values(A) -> np.ndarray:
    """All min(m, n) singular values, descending, with tiny values clamped to 0."""
    A = as_matrix(A)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv.size and sv[0] > 0:
        sv = np.where(sv < CLAMP_REL * sv[0], 0.0, sv)
    return sv


def schatten_norm(A, p: float) -> float:
    """(sum_i sigma_i^p)^(1/p) for p > 0."""
    if not (p > 0):
        raise InputError(f"Schatten norm needs p > 0, got {p}")
    sv = singular_values(A)
    pos = sv[sv > 0]
    if pos.size == 0:
        return 0.0
    # factor out the largest value for numerical stability at small p
    top = pos[0]
    return float(top * np.sum((pos / top) ** p) ** (1.0 / p))


def trace_norm(A) -> float:
    """Schatten 1-norm: the sum of singular values."""
    return float(np.sum(singular_values(A)))


def hadamard(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise InputError(f"Hadamard product needs equal shapes, got {A.shape} and {B.shape}")
    return A * B


def kronecker(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def direct_sum(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    m, n = A.shape
    mp, np_ = B.shape
    out = np.zeros((m + mp, n + np_))
    out[:m, :n] = A
    out[m:, n:] = B
    return out
