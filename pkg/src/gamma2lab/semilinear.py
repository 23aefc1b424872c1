"""Semilinear and dominance graph machinery.

Edges of a semilinear instance are defined by an exists/forall combination
of strict linear inequalities: (x, y) is an edge iff for some column j of
the form array, f(x, y) < 0 holds for every form in that column.  All
inequalities are strict; boundary points are non-incident and coordinate
ties block domination.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .boolmat import BoolMatrix
from .errors import CapabilityError, InputError
from .seeding import split_seed


@dataclass(frozen=True)
class LinearForm:
    """f(x, y) = <a, x> + <b, y> + c."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    c: float

    def __post_init__(self):
        vals = list(self.a) + list(self.b) + [self.c]
        if not all(math.isfinite(v) for v in vals):
            raise InputError("linear form has non-finite coefficients")

    def __call__(self, x: Sequence[float], y: Sequence[float]) -> float:
        return (
            sum(ai * xi for ai, xi in zip(self.a, x, strict=True))
            + sum(bi * yi for bi, yi in zip(self.b, y, strict=True))
            + self.c
        )


@dataclass(frozen=True)
class SemilinearInstance:
    """Point sets V1 in R^d1, V2 in R^d2 and an s x u array of linear forms."""

    points1: tuple[tuple[float, ...], ...]
    points2: tuple[tuple[float, ...], ...]
    forms: tuple[tuple[LinearForm, ...], ...]  # forms[i][j], i in [s], j in [u]

    def __post_init__(self):
        if not self.forms or not self.forms[0]:
            raise InputError("form array must be nonempty")
        u = len(self.forms[0])
        if any(len(row) != u for row in self.forms):
            raise InputError("ragged form array")
        d1 = len(self.forms[0][0].a)
        d2 = len(self.forms[0][0].b)
        for row in self.forms:
            for f in row:
                if len(f.a) != d1 or len(f.b) != d2:
                    raise InputError("inconsistent form dimensions")
        for p in self.points1:
            if len(p) != d1:
                raise InputError(f"point {p} not in R^{d1}")
        for p in self.points2:
            if len(p) != d2:
                raise InputError(f"point {p} not in R^{d2}")

    @property
    def s(self) -> int:
        return len(self.forms)

    @property
    def u(self) -> int:
        return len(self.forms[0])

    def to_json(self) -> dict:
        return {
            "points1": [list(p) for p in self.points1],
            "points2": [list(p) for p in self.points2],
            "forms": [
                [{"a": list(f.a), "b": list(f.b), "c": f.c} for f in row]
                for row in self.forms
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "SemilinearInstance":
        forms = tuple(
            tuple(LinearForm(tuple(f["a"]), tuple(f["b"]), f["c"]) for f in row)
            for row in obj["forms"]
        )
        return SemilinearInstance(
            tuple(tuple(p) for p in obj["points1"]),
            tuple(tuple(p) for p in obj["points2"]),
            forms,
        )


def edge(inst: SemilinearInstance, xi: int, yi: int) -> bool:
    """Exists j in [u] with f_{i,j}(x, y) < 0 for all i in [s]."""
    if not 0 <= xi < len(inst.points1):
        raise InputError(f"x index {xi} out of range")
    if not 0 <= yi < len(inst.points2):
        raise InputError(f"y index {yi} out of range")
    x, y = inst.points1[xi], inst.points2[yi]
    for j in range(inst.u):
        if all(inst.forms[i][j](x, y) < 0 for i in range(inst.s)):
            return True
    return False


def biadjacency(inst: SemilinearInstance) -> BoolMatrix:
    """Full edge matrix; vectorized over all pairs (same strict semantics as
    `edge`)."""
    n1, n2 = len(inst.points1), len(inst.points2)
    if n1 == 0 or n2 == 0:
        raise InputError("biadjacency needs nonempty point sets")
    P1 = np.asarray(inst.points1, dtype=np.float64)
    P2 = np.asarray(inst.points2, dtype=np.float64)
    any_col = np.zeros((n1, n2), dtype=bool)
    for j in range(inst.u):
        all_forms = np.ones((n1, n2), dtype=bool)
        for i in range(inst.s):
            f = inst.forms[i][j]
            g = P1 @ np.asarray(f.a) + f.c
            h = P2 @ np.asarray(f.b)
            all_forms &= g[:, None] + h[None, :] < 0
        any_col |= all_forms
    coords = [(int(i), int(j)) for i, j in zip(*np.nonzero(any_col))]
    return BoolMatrix.from_coords(n1, n2, coords)


@dataclass(frozen=True)
class DominanceInstance:
    """Edges are strict coordinatewise dominations x < y between U1 and U2."""

    u1: tuple[tuple[float, ...], ...]
    u2: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        dims = {len(p) for p in self.u1} | {len(p) for p in self.u2}
        if len(dims) > 1:
            raise InputError("mixed dimensions in dominance instance")
        if dims and min(dims) < 1:
            raise InputError("dimension must be >= 1")

    @property
    def s(self) -> int:
        return len(self.u1[0]) if self.u1 else len(self.u2[0])

    def biadjacency(self) -> BoolMatrix:
        m, n = max(len(self.u1), 1), max(len(self.u2), 1)
        if not self.u1 or not self.u2:
            return BoolMatrix.from_coords(m, n, [])
        X = np.asarray(self.u1, dtype=np.float64)
        Y = np.asarray(self.u2, dtype=np.float64)
        dom = np.all(X[:, None, :] < Y[None, :, :], axis=2)
        coords = [(int(i), int(j)) for i, j in zip(*np.nonzero(dom))]
        return BoolMatrix.from_coords(m, n, coords)

    def to_json(self) -> dict:
        return {"u1": [list(p) for p in self.u1], "u2": [list(p) for p in self.u2]}

    @staticmethod
    def from_json(obj: dict) -> "DominanceInstance":
        return DominanceInstance(
            tuple(tuple(p) for p in obj["u1"]), tuple(tuple(p) for p in obj["u2"])
        )


def to_dominance(inst: SemilinearInstance) -> DominanceInstance:
    """Fold a conjunction-only (u = 1) instance into a dominance instance:
    x~ = (g_i(x)) and y~ = (-h_i(y)), so edges become x~ strictly below y~."""
    if inst.u != 1:
        raise CapabilityError(
            f"dominance folding needs u=1, got u={inst.u}; decompose into sub-instances first"
        )
    col = [inst.forms[i][0] for i in range(inst.s)]
    u1 = tuple(
        tuple(sum(f.a[k] * x[k] for k in range(len(f.a))) + f.c for f in col)
        for x in inst.points1
    )
    u2 = tuple(
        tuple(-sum(f.b[k] * y[k] for k in range(len(f.b))) for f in col)
        for y in inst.points2
    )
    return DominanceInstance(u1, u2)


# ---------------------------------------------------------------------------
# dominance-pair counting (divide and conquer on the last coordinate)


def _count_1d(xs: list[float], ys: list[float]) -> int:
    """Pairs (x, y) with x < y, by merging sorted lists."""
    xs = sorted(xs)
    ys = sorted(ys)
    total = 0
    k = 0
    for y in ys:
        while k < len(xs) and xs[k] < y:
            k += 1
        total += k
    return total


def _count_dnc(P: list[tuple], Q: list[tuple], s: int) -> int:
    if not P or not Q:
        return 0
    if s == 1:
        return _count_1d([p[0] for p in P], [q[0] for q in Q])
    if len(P) * len(Q) <= 64:
        return sum(1 for p in P for q in Q if all(a < b for a, b in zip(p, q)))
    last = sorted(p[s - 1] for p in P + Q)
    med = last[len(last) // 2]
    PL = [p for p in P if p[s - 1] < med]
    PE = [p for p in P if p[s - 1] == med]
    PG = [p for p in P if p[s - 1] > med]
    QL = [q for q in Q if q[s - 1] < med]
    QE = [q for q in Q if q[s - 1] == med]
    QG = [q for q in Q if q[s - 1] > med]
    proj = lambda pts: [p[: s - 1] for p in pts]
    total = _count_dnc(PL, QL, s) + _count_dnc(PG, QG, s)
    total += _count_dnc(proj(PL), proj(QE + QG), s - 1)
    total += _count_dnc(proj(PE), proj(QG), s - 1)
    return total


def count_dominance_edges(inst: DominanceInstance) -> int:
    """Exact count of strictly dominating pairs via halving on the last axis."""
    if not inst.u1 or not inst.u2:
        return 0
    return _count_dnc([tuple(p) for p in inst.u1], [tuple(p) for p in inst.u2], inst.s)


def f_s_bound(n: int, t: int, s: int) -> int:
    """The Zarankiewicz recursion f_s(n) = 2 f_s(ceil(n/2)) + f_{s-1}(n) with
    base cases f_s(n) = n^2 for n <= t and f_1(n) = 2tn for n > t."""
    if n < 1 or t < 1 or s < 1:
        raise InputError("n, t, s must all be >= 1")

    @lru_cache(maxsize=None)
    def f(ss: int, nn: int) -> int:
        if nn <= t:
            return nn * nn
        if ss == 1:
            return 2 * t * nn
        return 2 * f(ss, (nn + 1) // 2) + f(ss - 1, nn)

    return f(s, n)


# ---------------------------------------------------------------------------
# generators


def gen_points_boxes(n: int, d: int, seed: int) -> SemilinearInstance:
    """n points and n open axis-parallel boxes in [0,1)^d; membership is the
    conjunction of 2d strict inequalities (s=2d, u=1).

    Box side lengths scale like n^(-1/d) so a box holds O(1) points in
    expectation -- the sparse incidence regime, where the interesting norm
    behaviour lives.  Giant random boxes would each contain a constant
    fraction of the points and degrees would grow linearly."""
    if n < 1 or d < 1:
        raise InputError("n and d must be >= 1")
    rng = np.random.default_rng(split_seed(seed, 0xB0))
    pts = tuple(tuple(rng.random(d).tolist()) for _ in range(n))
    scale = float(n) ** (-1.0 / d)
    boxes = []
    for _ in range(n):
        center = rng.random(d)
        half = rng.uniform(1e-9, scale, size=d)
        lo = center - half
        hi = center + half
        boxes.append(tuple(lo.tolist()) + tuple(hi.tolist()))
    forms = []
    for i in range(d):
        # lo_i - x_i < 0
        a = [0.0] * d
        a[i] = -1.0
        b = [0.0] * (2 * d)
        b[i] = 1.0
        forms.append(LinearForm(tuple(a), tuple(b), 0.0))
        # x_i - hi_i < 0
        a2 = [0.0] * d
        a2[i] = 1.0
        b2 = [0.0] * (2 * d)
        b2[d + i] = -1.0
        forms.append(LinearForm(tuple(a2), tuple(b2), 0.0))
    return SemilinearInstance(pts, tuple(boxes), tuple((f,) for f in forms))


def gen_points_corners(n: int, d: int, seed: int) -> SemilinearInstance:
    """n points and n corners C_t = {x : x_i < t_i for all i} in [0,1)^d."""
    if n < 1 or d < 1:
        raise InputError("n and d must be >= 1")
    rng = np.random.default_rng(split_seed(seed, 0xC0))
    pts = tuple(tuple(rng.random(d).tolist()) for _ in range(n))
    tips = tuple(tuple(rng.random(d).tolist()) for _ in range(n))
    forms = []
    for i in range(d):
        a = [0.0] * d
        a[i] = 1.0
        b = [0.0] * d
        b[i] = -1.0
        forms.append(LinearForm(tuple(a), tuple(b), 0.0))
    return SemilinearInstance(pts, tips, tuple((f,) for f in forms))


def gen_pol_h(
    points: Sequence[Sequence[float]],
    halfspaces: Sequence[tuple[Sequence[float], float]],
    translates: Sequence[Sequence[Sequence[float]]],
) -> BoolMatrix:
    """Incidence matrix of points and polytopes from POL(H).

    Each half-space is (normal, offset) meaning {x : <normal, x> + offset < 0};
    polytope k is the intersection of the half-spaces translated by
    translates[k][i] (one shift vector per half-space).  Membership is strict.
    """
    if not points or not translates:
        raise InputError("need at least one point and one polytope")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise InputError("inconsistent point dimension")
    for normal, _ in halfspaces:
        if len(normal) != d:
            raise InputError("half-space normal has wrong dimension")
    coords = []
    for pi, x in enumerate(points):
        for qi, shifts in enumerate(translates):
            if len(shifts) != len(halfspaces):
                raise InputError("need one translate per half-space")
            inside = True
            for (normal, offset), v in zip(halfspaces, shifts):
                if len(v) != d:
                    raise InputError("translate vector has wrong dimension")
                val = sum(a * (xk - vk) for a, xk, vk in zip(normal, x, v)) + offset
                if val >= 0:
                    inside = False
                    break
            if inside:
                coords.append((pi, qi))
    return BoolMatrix.from_coords(len(points), len(translates), coords)


def gen_dominance(n: int, s: int, seed: int) -> DominanceInstance:
    """n uniform points per side in [0,1)^s."""
    if n < 1 or s < 1:
        raise InputError("n and s must be >= 1")
    rng = np.random.default_rng(split_seed(seed, 0xD0))
    u1 = tuple(tuple(rng.random(s).tolist()) for _ in range(n))
    u2 = tuple(tuple(rng.random(s).tolist()) for _ in range(n))
    return DominanceInstance(u1, u2)


def gen_dominance_anti(n: int, s: int, seed: int) -> DominanceInstance:
    """n points per side near a descending antichain surface, with jitter of
    order 1/n.  Dominations are rare (O(n) in expectation), so instances are
    frequently free of 2x2 all-ones submatrices -- unlike uniform instances,
    which essentially never are once n is in the dozens.

    For s = 1 the antichain trick is unavailable; instead one x sits below all
    ys and all remaining xs sit below a single top y, a staircase that has
    2n - 1 edges and never contains a 2x2 all-ones block.
    """
    if n < 1 or s < 1:
        raise InputError("n and s must be >= 1")
    rng = np.random.default_rng(split_seed(seed, 0xD1))
    # Interaction window ~n^(-4/3): wide enough for ~n^(2/3) dominations,
    # narrow enough that the expected number of 2x2 all-ones patterns stays
    # bounded as n grows.
    jitter = float(n) ** (-4.0 / 3.0)
    if s == 1:
        xs = [0.0] + (0.5 + 0.4 * rng.random(n - 1)).tolist()
        ys = (0.1 + 0.3 * rng.random(n - 1)).tolist() + [1.0]
        return DominanceInstance(
            tuple((float(v),) for v in xs), tuple((float(v),) for v in ys)
        )

    def side(offset: float) -> tuple[tuple[float, ...], ...]:
        t = rng.random(n)
        pts = []
        for k in range(n):
            base = [t[k]] * (s - 1) + [1.0 - t[k]]
            wig = jitter * rng.random(s)
            pts.append(tuple(float(b + w + offset) for b, w in zip(base, wig)))
        return tuple(pts)

    return DominanceInstance(side(0.0), side(jitter / 2.0))


def save_instance(obj, path: str) -> None:
    payload = obj.to_json()
    payload["type"] = type(obj).__name__
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)


def load_instance(path: str):
    with open(path) as fh:
        obj = json.load(fh)
    kind = obj.get("type")
    if kind == "SemilinearInstance":
        return SemilinearInstance.from_json(obj)
    if kind == "DominanceInstance":
        return DominanceInstance.from_json(obj)
    raise InputError(f"unknown instance type {kind!r}")
