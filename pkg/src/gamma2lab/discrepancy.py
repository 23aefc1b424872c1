"""Exact small-scale combinatorial discrepancy and the gamma_2 / hereditary
discrepancy sandwich diagnostics.

disc(M) = min over sign vectors x of ||M x||_inf.  The exact search
enumerates all sign vectors (up to global negation) in vectorized chunks;
the hard cap of 24 columns keeps this at seconds scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gamma2 as g2
from .boolmat import BoolMatrix
from .errors import CapabilityError, InputError
from .seeding import split_seed

DISC_COL_CAP = 24
_CHUNK_BITS = 14


@dataclass(frozen=True)
class DiscResult:
    value: int
    argmin: tuple[int, ...]  # entries in {-1, +1}

    def verify(self, M: BoolMatrix) -> bool:
        x = np.array(self.argmin, dtype=np.int64)
        return int(np.max(np.abs(M.to_dense(np.int64) @ x))) == self.value


def disc_exact(M: BoolMatrix) -> DiscResult:
    """Exhaustive minimum of ||Mx||_inf over x in {-1, 1}^n (n <= 24)."""
    if M.n > DISC_COL_CAP:
        raise CapabilityError(f"exact discrepancy limited to n <= {DISC_COL_CAP}, got {M.n}")
    A = M.to_dense(np.int64)
    n = M.n
    # fix x[n-1] = +1: disc is invariant under global negation
    free = n - 1
    base = A[:, -1].copy()
    best_val = None
    best_x = None
    if free == 0:
        v = int(np.max(np.abs(base)))
        return DiscResult(v, (1,))
    chunk = 1 << min(_CHUNK_BITS, free)
    masks = np.arange(chunk, dtype=np.uint32)
    for start in range(0, 1 << free, chunk):
        codes = start + masks
        # bits -> signs matrix (free x chunk): bit set means -1
        bits = ((codes[None, :] >> np.arange(free)[:, None]) & 1).astype(np.int64)
        signs = 1 - 2 * bits
        sums = A[:, :free] @ signs + base[:, None]
        vals = np.max(np.abs(sums), axis=0)
        k = int(np.argmin(vals))
        if best_val is None or vals[k] < best_val:
            best_val = int(vals[k])
            best_x = tuple(int(s) for s in signs[:, k]) + (1,)
            if best_val == 0:
                break
    return DiscResult(best_val, best_x)


def herdisc_lower(M: BoolMatrix, samples: int, seed: int) -> int:
    """Max of disc_exact over sampled submatrices plus M itself: a valid
    lower bound on the hereditary discrepancy."""
    if M.n > DISC_COL_CAP:
        raise CapabilityError(f"herdisc sampling needs n <= {DISC_COL_CAP}, got {M.n}")
    best = disc_exact(M).value
    if M.count_ones:
        best = max(best, 1)  # a 1x1 all-ones submatrix always has disc 1
    rng = np.random.default_rng(split_seed(seed, 0xD15C))
    for _ in range(samples):
        nr = int(rng.integers(1, M.m + 1))
        nc = int(rng.integers(1, M.n + 1))
        rows = sorted(rng.choice(M.m, size=nr, replace=False).tolist())
        cols = sorted(rng.choice(M.n, size=nc, replace=False).tolist())
        best = max(best, disc_exact(M.submatrix(rows, cols)).value)
    return best


def mnt_report(M: BoolMatrix, samples: int = 32, seed: int = 0) -> dict:
    """Diagnostics for the herdisc = Theta~(gamma_2) sandwich: reported
    ratios only, since the constants hidden in the O/Omega are unspecified."""
    if M.m < 2:
        raise InputError("report needs at least 2 rows")
    bounds = g2.best_bounds(M)
    hlb = herdisc_lower(M, samples, seed)
    logm = math.log2(M.m)
    return {
        "m": M.m,
        "n": M.n,
        "gamma2_lower": bounds.lower,
        "gamma2_upper": bounds.upper,
        "herdisc_lower": hlb,
        "ratio_upper": hlb / (bounds.upper * math.sqrt(logm)),
        "ratio_lower": bounds.lower / (hlb * logm) if hlb else float("inf"),
    }
