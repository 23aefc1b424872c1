"""Structural extraction pipeline: regularization, biregularization, and
dense-submatrix extraction driven by the square-count argument.

Every output is re-verified against its stated inequalities before return;
a violation raises InternalInvariantError since the underlying counting
arguments guarantee existence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boolmat as bm
from . import gamma2 as g2
from .boolmat import BoolMatrix
from .errors import CapabilityError, InputError, InternalInvariantError
from .seeding import split_seed


@dataclass(frozen=True)
class RegularizedSubmatrix:
    """Index sets of a submatrix N with average degree d_prime >= avg(M)/3,
    minimum degree >= d_prime/2, and the bounded side capped at 6*d_prime."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    d_prime: float
    bounded_side: str  # "rows" | "cols"

    def verify(self, M: BoolMatrix) -> None:
        N = M.submatrix(self.rows, self.cols)
        if bm.avg_degree(N) + 1e-9 < self.d_prime:
            raise InternalInvariantError("regularized submatrix misses its average degree")
        if self.d_prime + 1e-9 < bm.avg_degree(M) / 3:
            raise InternalInvariantError("d_prime below avg_degree(M)/3")
        min_deg = min(min(N.row_degrees()), min(N.col_degrees()))
        if min_deg + 1e-9 < self.d_prime / 2:
            raise InternalInvariantError("minimum degree below d_prime/2")
        caps = N.row_degrees() if self.bounded_side == "rows" else N.col_degrees()
        if max(caps) > 6 * self.d_prime + 1e-9:
            raise InternalInvariantError("bounded side exceeds 6*d_prime")


def regularize(M: BoolMatrix) -> RegularizedSubmatrix:
    """Pass to a maximum-average-degree subgraph, drop high-degree vertices on
    the larger side, and re-extract a maximum-average-degree subgraph."""
    if M.count_ones == 0:
        raise InputError("cannot regularize the zero matrix")
    rows0, cols0, d0 = bm.max_avg_degree_subgraph(M)
    N0 = M.submatrix(rows0, cols0)
    if len(rows0) >= len(cols0):
        larger = "rows"
        degs = N0.row_degrees()
        keep = [k for k, d in enumerate(degs) if d <= 2 * d0]
        rows1 = [rows0[k] for k in keep]
        cols1 = list(cols0)
    else:
        larger = "cols"
        degs = N0.col_degrees()
        keep = [k for k, d in enumerate(degs) if d <= 2 * d0]
        rows1 = list(rows0)
        cols1 = [cols0[k] for k in keep]
    N1 = M.submatrix(rows1, cols1)
    if N1.count_ones == 0:
        raise InternalInvariantError("pruning removed all edges")
    rows2, cols2, d_prime = bm.max_avg_degree_subgraph(N1)
    result = RegularizedSubmatrix(
        tuple(rows1[k] for k in rows2),
        tuple(cols1[k] for k in cols2),
        d_prime,
        larger,
    )
    result.verify(M)
    return result


@dataclass(frozen=True)
class BiregularCert:
    """(p, q, d)-biregularity witness for the submatrix M[rows, cols]
    (transposed first when `transposed` is set): integer caps a, b > d on
    row/column ones-counts, and total ones >= max(p*a*#rows, q*b*#cols)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    p: float
    q: float
    d: float
    a: int
    b: int
    transposed: bool

    def oriented(self, M: BoolMatrix) -> BoolMatrix:
        N = M.submatrix(self.rows, self.cols)
        return N.transpose() if self.transposed else N

    def verify(self, M: BoolMatrix) -> None:
        N = self.oriented(M)
        if not (self.a > self.d and self.b > self.d):
            raise InternalInvariantError(f"caps a={self.a}, b={self.b} not above d={self.d}")
        if max(N.row_degrees()) > self.a:
            raise InternalInvariantError("a row exceeds the cap a")
        if max(N.col_degrees()) > self.b:
            raise InternalInvariantError("a column exceeds the cap b")
        ones = N.count_ones
        if ones + 1e-9 < max(self.p * self.a * N.m, self.q * self.b * N.n):
            raise InternalInvariantError("ones count below the biregularity floor")


def biregularize(M: BoolMatrix) -> BiregularCert:
    """Dyadic pigeonhole on the regularized submatrix's column ones-counts;
    yields a (1/2, 1/(12 log2(m+n)), avg_degree(M)/2)-biregular orientation."""
    if M.count_ones == 0:
        raise InputError("cannot biregularize the zero matrix")
    reg = regularize(M)
    # orient so that ROWS are the capped (larger) side of the regularized part
    flip_reg = reg.bounded_side == "cols"
    N = M.submatrix(reg.rows, reg.cols)
    if flip_reg:
        N = N.transpose()
    a_cap = math.ceil(6 * reg.d_prime)
    logn = max(math.log2(M.m + M.n), 1.0)
    total = N.count_ones
    # dyadic buckets on column ones-counts; scan from the largest cap down and
    # take the first bucket carrying at least a 1/log2(m+n) fraction of ones
    degs = N.col_degrees()
    buckets: dict[int, list[int]] = {}
    for j, dj in enumerate(degs):
        if dj:
            k = max(dj - 1, 0).bit_length()  # dj in (2^(k-1), 2^k]
            buckets.setdefault(k, []).append(j)
    chosen = None
    for k in sorted(buckets, reverse=True):
        cols = buckets[k]
        mass = sum(degs[j] for j in cols)
        if mass * logn >= total:
            chosen = (k, cols)
            break
    if chosen is None:
        # the heaviest bucket always carries >= total/#buckets >= total/log2
        k, cols = max(buckets.items(), key=lambda kv: sum(degs[j] for j in kv[1]))
        chosen = (k, cols)
    k, cols = chosen
    b_cap = 1 << k
    # the certified matrix is the transpose of N restricted to those columns,
    # so its rows (the chosen columns of N) are capped at b_cap and its
    # columns (the rows of N) at a_cap; map back to indices of M
    if flip_reg:
        # N columns are original rows of M
        cert_rows = tuple(reg.rows[j] for j in cols)
        cert_cols = tuple(reg.cols)
        transposed = False
    else:
        cert_rows = tuple(reg.rows)
        cert_cols = tuple(reg.cols[j] for j in cols)
        transposed = True
    d = bm.avg_degree(M) / 2.0
    cert = BiregularCert(
        rows=cert_rows,
        cols=cert_cols,
        p=0.5,
        q=1.0 / (12.0 * logn),
        d=d,
        a=b_cap,
        b=a_cap,
        transposed=transposed,
    )
    # tighten the caps to the realized maxima (lowering a or b only relaxes
    # the ones floor); this makes regular inputs certify with a = b = degree
    O = cert.oriented(M)
    min_cap = math.floor(d) + 1
    cert = BiregularCert(
        rows=cert.rows,
        cols=cert.cols,
        p=cert.p,
        q=cert.q,
        d=d,
        a=max(max(O.row_degrees()), min_cap),
        b=max(max(O.col_degrees()), min_cap),
        transposed=cert.transposed,
    )
    cert.verify(M)
    return cert


def max_feasible_z(M: BoolMatrix, gamma_upper: float | None = None) -> tuple[int, float]:
    """Largest z admitted by the density guarantee, and the guarantee factor
    alpha = 1/(200 * gamma_ub^2 * log2(m+n))."""
    if gamma_upper is None:
        gamma_upper = g2.best_bounds(M).upper
    alpha = 1.0 / (200.0 * gamma_upper**2 * max(math.log2(M.m + M.n), 1.0))
    return int(math.floor(alpha * bm.avg_degree(M))), alpha


def dense_submatrix(
    M: BoolMatrix,
    z: int,
    seed: int = 0,
    enforce_precondition: bool = True,
) -> tuple[list[int], list[int]]:
    """A z x z submatrix of average degree >= alpha*z.

    Follows the square-counting argument: pick the row in the most squares,
    restrict to its neighbourhood, keep heavy rows, then take the best of 64
    seeded random z x z samples with a greedy fallback.  With
    `enforce_precondition` off, the z <= alpha*d admission check is skipped
    (useful for planted instances where the guarantee is vacuous but the
    search still succeeds); the alpha*z density floor is still enforced.
    """
    if z < 1:
        raise InputError("z must be >= 1")
    if M.count_ones == 0:
        raise InputError("no dense submatrix in the zero matrix")
    if z == 1:
        i, j = M.coords()[0]
        return [i], [j]
    z_max, alpha = max_feasible_z(M)
    if enforce_precondition and z > z_max:
        raise CapabilityError(
            f"z={z} exceeds the guaranteed range; max feasible z is {z_max}"
        )
    if z > min(M.m, M.n):
        raise CapabilityError(f"z={z} exceeds matrix dimensions {M.m}x{M.n}")

    target = alpha * z * z  # required ones count

    candidates: list[tuple[list[int], list[int]]] = []

    def greedy_from(mat: BoolMatrix, row_ids: list[int], col_ids: list[int]):
        if mat.m < z or mat.n < z:
            return
        top_rows = sorted(range(mat.m), key=lambda i: -mat.row_degree(i))[:z]
        sub = mat.submatrix(top_rows, range(mat.n))
        top_cols = sorted(range(mat.n), key=lambda j: -sub.col_degrees()[j])[:z]
        candidates.append(
            (sorted(row_ids[i] for i in top_rows), sorted(col_ids[j] for j in top_cols))
        )

    # square-count pipeline on the biregular orientation
    try:
        cert = biregularize(M)
    except InternalInvariantError:
        cert = None
    if cert is not None:
        N = cert.oriented(M)
        row_ids = list(cert.cols if cert.transposed else cert.rows)
        col_ids = list(cert.rows if cert.transposed else cert.cols)
        A = N.to_dense(dtype=np.int64)
        G = A @ A.T
        # squares with first coordinate i: sum_{i'} |row_i /\ row_i'|^2
        per_row = np.sum(G * G, axis=1)
        i0 = int(np.argmax(per_row))
        J = N.row_support(i0)
        if len(J) >= z:
            Mp = N.submatrix(range(N.m), J)
            s = Mp.row_degrees()
            x = max(1.0, alpha * len(J))
            heavy = [i for i in range(Mp.m) if s[i] >= x]
            if len(heavy) < z:
                heavy = sorted(range(Mp.m), key=lambda i: -s[i])[:z]
            Mpp = Mp.submatrix(heavy, range(Mp.n))
            hrow_ids = [row_ids[i] for i in heavy]
            hcol_ids = [col_ids[j] for j in J]
            rng = np.random.default_rng(split_seed(seed, 1))
            for _ in range(64 if Mpp.m >= z and Mpp.n >= z else 0):
                ri = sorted(rng.choice(Mpp.m, size=z, replace=False).tolist())
                ci = sorted(rng.choice(Mpp.n, size=z, replace=False).tolist())
                sub = Mpp.submatrix(ri, ci)
                if sub.count_ones >= target:
                    candidates.append(
                        (sorted(hrow_ids[i] for i in ri), sorted(hcol_ids[j] for j in ci))
                    )
                    break
            greedy_from(Mpp, hrow_ids, hcol_ids)
    # plain greedy fallback on the whole matrix
    greedy_from(M, list(range(M.m)), list(range(M.n)))

    best = None
    best_ones = -1
    for rows, cols in candidates:
        ones = M.submatrix(rows, cols).count_ones
        if ones > best_ones:
            best, best_ones = (rows, cols), ones
    if best is None or best_ones < target - 1e-9:
        raise InternalInvariantError(
            f"no z x z submatrix met the density floor {target:.4g} (best {best_ones})"
        )
    return best
