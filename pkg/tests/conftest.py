"""Shared brute-force oracles and generators for the test suite.

Everything here is deliberately naive: quadruple loops, full enumeration,
all-pairs scans.  The point is independence from the library code under test.
"""

from __future__ import annotations

import itertools

import numpy as np

from gamma2lab.boolmat import BoolMatrix


def random_boolmatrix(rng: np.random.Generator, m: int, n: int, density: float) -> BoolMatrix:
    return BoolMatrix.from_dense((rng.random((m, n)) < density).astype(int))


def all_3x3_matrices():
    for bits in range(512):
        coords = [(k // 3, k % 3) for k in range(9) if bits >> k & 1]
        yield bits, BoolMatrix.from_coords(3, 3, coords)


def oracle_count_squares(M: BoolMatrix) -> int:
    A = M.to_dense(dtype=np.int64)
    total = 0
    for i in range(M.m):
        for i2 in range(M.m):
            for j in range(M.n):
                for j2 in range(M.n):
                    if A[i, j] and A[i, j2] and A[i2, j] and A[i2, j2]:
                        total += 1
    return total


def oracle_densest_density(M: BoolMatrix) -> float:
    """Max over all nonempty induced submatrices of 2*ones/(rows+cols)."""
    best = 0.0
    rows = range(M.m)
    cols = range(M.n)
    for rk in range(1, M.m + 1):
        for rs in itertools.combinations(rows, rk):
            for ck in range(1, M.n + 1):
                for cs in itertools.combinations(cols, ck):
                    sub = M.submatrix(rs, cs)
                    best = max(best, 2.0 * sub.count_ones / (rk + ck))
    return best


def oracle_has_ktt(M: BoolMatrix, t: int) -> bool:
    if t > min(M.m, M.n):
        return False
    for rs in itertools.combinations(range(M.m), t):
        for cs in itertools.combinations(range(M.n), t):
            if M.submatrix(rs, cs).count_ones == t * t:
                return True
    return False


def oracle_disc(M: BoolMatrix) -> int:
    A = M.to_dense(dtype=np.int64)
    best = None
    for signs in itertools.product((-1, 1), repeat=M.n):
        v = int(np.max(np.abs(A @ np.array(signs, dtype=np.int64))))
        if best is None or v < best:
            best = v
    return best


def oracle_dominance_count(u1, u2) -> int:
    return sum(
        1
        for x in u1
        for y in u2
        if all(a < b for a, b in zip(x, y))
    )


def oracle_degeneracy(M: BoolMatrix) -> int:
    """Smallest d such that every induced submatrix has a row or column with
    <= d ones.  Exponential; only for tiny matrices."""
    worst = 0
    for rk in range(1, M.m + 1):
        for rs in itertools.combinations(range(M.m), rk):
            for ck in range(1, M.n + 1):
                for cs in itertools.combinations(range(M.n), ck):
                    sub = M.submatrix(rs, cs)
                    mindeg = min(sub.row_degrees() + sub.col_degrees())
                    worst = max(worst, mindeg)
    return worst


HALF = BoolMatrix.from_rows([[1, 1], [1, 0]])

FIG1_BLOCKY = BoolMatrix.from_rows(
    [
        [1, 1, 1, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1],
    ]
)

# Exact gamma_2 of HALF, frozen from an independent factorization-search
# oracle (direct numerical minimization over 2xk factorizations) run before
# the library was built; agrees with 2/sqrt(3) to 8 digits.
GAMMA2_HALF = 2.0 / np.sqrt(3.0)
