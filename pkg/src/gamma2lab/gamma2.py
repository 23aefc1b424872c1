"""Certified lower/upper bounds on the gamma-2 (factorization) norm of
Boolean matrices, plus exact values at small scale via the standard convex
(semidefinite) characterization.

Certificate values are always recomputed from the raw certificate data at
verification time, never trusted from construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import boolmat as bm
from . import spectral as sp
from .boolmat import BoolMatrix
from .errors import CapabilityError, ConvergenceError, InputError, InternalInvariantError

EXACT_DIM_LIMIT = 32
FACT_TOL = 1e-9


def _fmt12(x: float) -> str:
    return format(float(x), ".12g")


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class FactorizationCert:
    """Upper-bound certificate: target = sum of U_k V_k, value from norms.

    By definition of the norm and its subadditivity, the recomputed value is
    an upper bound on gamma_2 of the target.
    """

    parts: tuple[tuple[np.ndarray, np.ndarray], ...]
    target: np.ndarray

    @property
    def value(self) -> float:
        total = 0.0
        for U, V in self.parts:
            row = float(np.max(np.linalg.norm(U, axis=1))) if U.size else 0.0
            col = float(np.max(np.linalg.norm(V, axis=0))) if V.size else 0.0
            total += row * col
        return total

    def verify(self) -> bool:
        acc = np.zeros_like(self.target, dtype=np.float64)
        for U, V in self.parts:
            acc += U @ V
        return bool(np.max(np.abs(acc - self.target)) <= FACT_TOL) if acc.size else True

    def to_json(self) -> dict:
        return {
            "kind": "factorization",
            "value": _fmt12(self.value),
            "parts": [
                {"U": U.tolist(), "V": V.tolist()} for U, V in self.parts
            ],
        }


@dataclass(frozen=True)
class WitnessCert:
    """Lower-bound certificate: unit vectors u, v with value = ||M o uv^T||_tr."""

    u: np.ndarray
    v: np.ndarray
    matrix: np.ndarray

    @property
    def value(self) -> float:
        return sp.trace_norm(self.matrix * np.outer(self.u, self.v))

    def verify(self) -> bool:
        return (
            abs(np.linalg.norm(self.u) - 1.0) <= 1e-9
            and abs(np.linalg.norm(self.v) - 1.0) <= 1e-9
        )

    def to_json(self) -> dict:
        return {
            "kind": "witness",
            "value": _fmt12(self.value),
            "u": [_fmt12(x) for x in self.u],
            "v": [_fmt12(x) for x in self.v],
        }


# ---------------------------------------------------------------------------
# upper bounds


def upper_rowcol(M: BoolMatrix) -> FactorizationCert:
    """Trivial factorization (M, I) or (I, M): value = sqrt(min side degree cap)."""
    A = M.to_dense()
    max_row = max(M.row_degrees())
    max_col = max(M.col_degrees())
    if max_row <= max_col:
        parts = ((A, np.eye(M.n)),)
    else:
        parts = ((np.eye(M.m), A),)
    return FactorizationCert(parts, A)


def upper_degeneracy(M: BoolMatrix) -> FactorizationCert:
    """Split M along the degeneracy order; each part is certified one-sidedly.

    The row part has at most dgc(M) ones per row and the column part at most
    dgc(M) ones per column, so the value is at most 2*sqrt(dgc(M)).
    """
    res = bm.degeneracy(M)
    pos = {tag: k for k, tag in enumerate(res.order)}
    A = M.to_dense()
    M1 = np.zeros_like(A)
    M2 = np.zeros_like(A)
    for i, j in M.coords():
        if pos[("R", i)] < pos[("C", j)]:
            M1[i, j] = 1.0
        else:
            M2[i, j] = 1.0
    parts = []
    if M1.any():
        parts.append((M1, np.eye(M.n)))
    if M2.any():
        parts.append((np.eye(M.m), M2))
    return FactorizationCert(tuple(parts), A)


def upper_support_groups(M: BoolMatrix) -> FactorizationCert:
    """Greedy rectangle-cover certificate from rows (or columns) with equal
    support; exact (value 1) on blocky matrices, where the per-side split of
    the degeneracy certificate is badly loose."""

    def one_side(mat: BoolMatrix) -> tuple[float, np.ndarray, np.ndarray]:
        groups: dict[int, list[int]] = {}
        for i, r in enumerate(mat.rows):
            if r:
                groups.setdefault(r, []).append(i)
        k = len(groups)
        U = np.zeros((mat.m, max(k, 1)))
        V = np.zeros((max(k, 1), mat.n))
        for g, (support, members) in enumerate(sorted(groups.items(), key=lambda kv: kv[1][0])):
            for i in members:
                U[i, g] = 1.0
            s = support
            while s:
                j = (s & -s).bit_length() - 1
                V[g, j] = 1.0
                s &= s - 1
        value = 0.0
        if k:
            value = float(np.max(np.linalg.norm(U, axis=1)) * np.max(np.linalg.norm(V, axis=0)))
        return value, U, V

    val_r, Ur, Vr = one_side(M)
    val_c, Uc, Vc = one_side(M.transpose())
    A = M.to_dense()
    if M.count_ones == 0:
        return FactorizationCert((), A)
    if val_r <= val_c:
        return FactorizationCert(((Ur, Vr),), A)
    return FactorizationCert(((Vc.T, Uc.T),), A)


# ---------------------------------------------------------------------------
# lower bounds


def lower_avg(M: BoolMatrix) -> WitnessCert:
    """Uniform unit witness vectors: value = ||M||_tr / sqrt(mn)."""
    u = np.full(M.m, 1.0 / math.sqrt(M.m))
    v = np.full(M.n, 1.0 / math.sqrt(M.n))
    return WitnessCert(u, v, M.to_dense())


def lower_degree_weighted(M: BoolMatrix) -> WitnessCert:
    """Row weights u(i) = sqrt(d_i / f) with uniform v."""
    f = M.count_ones
    if f == 0:
        raise InputError("no witness on zero matrix")
    u = np.sqrt(np.array(M.row_degrees(), dtype=np.float64) / f)
    v = np.full(M.n, 1.0 / math.sqrt(M.n))
    return WitnessCert(u, v, M.to_dense())


def lower_schatten(M: BoolMatrix) -> float:
    """gamma_2(M) >= ||M||_2^3 / (sqrt(mn) * ||M||_4^2), with the Boolean
    identities ||M||_2^2 = ones and ||M||_4^4 = square count."""
    f = M.count_ones
    if f == 0:
        raise InputError("no Schatten bound on zero matrix")
    n4sq = math.sqrt(bm.count_squares(M))
    return f ** 1.5 / (math.sqrt(M.m * M.n) * n4sq)


# ---------------------------------------------------------------------------
# exact value via SDP

_PROBLEM_CACHE: dict[tuple[int, int], tuple] = {}


def _get_problem(m: int, n: int):
    import cvxpy as cp

    key = (m, n)
    if key not in _PROBLEM_CACHE:
        X = cp.Variable((m + n, m + n), symmetric=True)
        t = cp.Variable()
        P = cp.Parameter((m, n))
        prob = cp.Problem(
            cp.Minimize(t), [X >> 0, X[:m, m:] == P, cp.diag(X) <= t]
        )
        _PROBLEM_CACHE[key] = (prob, P, t)
    return _PROBLEM_CACHE[key]


def exact_gamma2(M: BoolMatrix, tol: float = 1e-6) -> float:
    """Exact gamma_2 by minimizing t with [[A, M], [M^T, B]] PSD, diag <= t."""
    if not (1e-8 <= tol <= 1e-2):
        raise InputError(f"tol must be in [1e-8, 1e-2], got {tol}")
    if min(M.m, M.n) > EXACT_DIM_LIMIT:
        raise CapabilityError(
            f"exact gamma_2 limited to min(m, n) <= {EXACT_DIM_LIMIT}, got {min(M.m, M.n)}"
        )
    import cvxpy as cp

    prob, P, t = _get_problem(M.m, M.n)
    P.value = M.to_dense()
    eps = min(1e-9, tol * 1e-3)
    prob.solve(solver=cp.SCS, eps=eps, max_iters=200_000)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise ConvergenceError(f"SDP solver status {prob.status}", gap=None)
    if prob.status == "optimal_inaccurate":
        stats = prob.solver_stats
        gap = None
        if stats is not None and stats.extra_stats:
            gap = stats.extra_stats.get("info", {}).get("gap")
        raise ConvergenceError("SDP did not reach the requested tolerance", gap=gap)
    return max(float(t.value), 0.0)


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class Gamma2Bounds:
    lower: float
    upper: float
    lower_cert: object
    upper_cert: FactorizationCert
    exact: Optional[float] = None

    def __post_init__(self):
        if not self.lower <= self.upper + 1e-6:
            raise InternalInvariantError(
                f"lower bound {self.lower} exceeds upper bound {self.upper}"
            )
        if self.exact is not None and not (
            self.lower - 1e-4 <= self.exact <= self.upper + 1e-4
        ):
            raise InternalInvariantError(
                f"exact value {self.exact} outside [{self.lower}, {self.upper}]"
            )

    def to_json(self) -> dict:
        cert = self.lower_cert
        return {
            "lower": _fmt12(self.lower),
            "upper": _fmt12(self.upper),
            "exact": None if self.exact is None else _fmt12(self.exact),
            "lower_cert": cert.to_json() if isinstance(cert, WitnessCert) else {
                "kind": "schatten", "value": _fmt12(cert)
            },
            "upper_cert": self.upper_cert.to_json(),
        }


def best_bounds(M: BoolMatrix, with_exact: bool = False, tol: float = 1e-6) -> Gamma2Bounds:
    """Max of all lower bounds, min of all upper bounds, certificates attached."""
    uppers = [upper_rowcol(M), upper_degeneracy(M), upper_support_groups(M)]
    for cert in uppers:
        if not cert.verify():
            raise InternalInvariantError("factorization certificate failed to verify")
    upper_cert = min(uppers, key=lambda c: c.value)

    lower_candidates: list[tuple[float, object]] = []
    w = lower_avg(M)
    lower_candidates.append((w.value, w))
    if M.count_ones:
        w2 = lower_degree_weighted(M)
        lower_candidates.append((w2.value, w2))
        s = lower_schatten(M)
        lower_candidates.append((s, s))
    lower, lower_cert = max(lower_candidates, key=lambda kv: kv[0])

    exact = exact_gamma2(M, tol) if with_exact else None
    return Gamma2Bounds(lower, upper_cert.value, lower_cert, upper_cert, exact)
