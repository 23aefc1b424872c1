"""Bit-packed Boolean matrices and their bipartite-graph combinatorics.

A BoolMatrix is the bi-adjacency matrix of a bipartite graph on row vertices
and column vertices.  Rows are stored as Python integers used as bitsets, so
row-pair intersections (the dominant kernel for four-cycle and K_{t,t}
checks) are word-AND popcounts.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class BoolMatrix:
    """An immutable m x n 0/1 matrix; `rows[i]` has bit j set iff cell (i,j)=1."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InputError(f"matrix dimensions must be positive, got {self.m}x{self.n}")
        if len(self.rows) != self.m:
            raise InputError("row count does not match m")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r & ~full:
                raise InputError("row bitmask has bits outside column range")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_coords(m: int, n: int, coords: Iterable[tuple[int, int]]) -> "BoolMatrix":
        """Build from a coordinate list; duplicates are idempotent."""
        rows = [0] * m
        for i, j in coords:
            if not (0 <= i < m and 0 <= j < n):
                raise InputError(f"coordinate ({i}, {j}) out of range for {m}x{n}")
            rows[i] |= 1 << j
        return BoolMatrix(m, n, tuple(rows))

    @staticmethod
    def from_rows(rowlists: Sequence[Sequence[int]]) -> "BoolMatrix":
        """Build from a dense list of 0/1 lists."""
        m = len(rowlists)
        if m == 0:
            raise InputError("empty matrix")
        n = len(rowlists[0])
        rows = []
        for row in rowlists:
            if len(row) != n:
                raise InputError("ragged rows")
            mask = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise InputError(f"non-Boolean entry {v!r}")
                if v:
                    mask |= 1 << j
            rows.append(mask)
        return BoolMatrix(m, n, tuple(rows))

    @staticmethod
    def from_dense(arr: np.ndarray) -> "BoolMatrix":
        a = np.asarray(arr)
        if a.ndim != 2:
            raise InputError("need a 2-D array")
        if not np.isin(a, (0, 1)).all():
            raise InputError("entries must be 0 or 1")
        return BoolMatrix.from_rows(a.astype(int).tolist())

    @staticmethod
    def identity(n: int) -> "BoolMatrix":
        return BoolMatrix(n, n, tuple(1 << i for i in range(n)))

    @staticmethod
    def ones(m: int, n: int) -> "BoolMatrix":
        full = (1 << n) - 1
        return BoolMatrix(m, n, (full,) * m)

    @staticmethod
    def zeros(m: int, n: int) -> "BoolMatrix":
        return BoolMatrix(m, n, (0,) * m)

    # -- basic accessors ----------------------------------------------------

    def cell(self, i: int, j: int) -> int:
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise InputError(f"cell ({i}, {j}) out of range")
        return (self.rows[i] >> j) & 1

    @property
    def count_ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def row_degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def row_degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_masks(self) -> list[int]:
        """Column bitsets over rows (the transpose's row masks)."""
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                cols[j] |= 1 << i
                r &= r - 1
        return cols

    def col_degrees(self) -> list[int]:
        degs = [0] * self.n
        for r in self.rows:
            while r:
                j = (r & -r).bit_length() - 1
                degs[j] += 1
                r &= r - 1
        return degs

    def row_support(self, i: int) -> list[int]:
        out, r = [], self.rows[i]
        while r:
            out.append((r & -r).bit_length() - 1)
            r &= r - 1
        return out

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix(self.n, self.m, tuple(self.col_masks()))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BoolMatrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        if not row_idx or not col_idx:
            raise InputError("submatrix needs nonempty row and column sets")
        for i in row_idx:
            if not 0 <= i < self.m:
                raise InputError(f"row index {i} out of range")
        for j in col_idx:
            if not 0 <= j < self.n:
                raise InputError(f"column index {j} out of range")
        rows = []
        for i in row_idx:
            src = self.rows[i]
            mask = 0
            for jj, j in enumerate(col_idx):
                if (src >> j) & 1:
                    mask |= 1 << jj
            rows.append(mask)
        return BoolMatrix(len(row_idx), len(col_idx), tuple(rows))

    def to_dense(self, dtype=np.float64) -> np.ndarray:
        out = np.zeros((self.m, self.n), dtype=dtype)
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[i, j] = 1
                r &= r - 1
        return out

    def coords(self) -> list[tuple[int, int]]:
        """All 1-cells in row-major order."""
        out = []
        for i in range(self.m):
            for j in self.row_support(i):
                out.append((i, j))
        return out

    # -- algebraic combinations (Boolean-valued plumbing) --------------------

    def direct_sum(self, other: "BoolMatrix") -> "BoolMatrix":
        rows = list(self.rows) + [r << self.n for r in other.rows]
        return BoolMatrix(self.m + other.m, self.n + other.n, tuple(rows))

    def kronecker(self, other: "BoolMatrix") -> "BoolMatrix":
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                mask = 0
                r = ra
                while r:
                    j = (r & -r).bit_length() - 1
                    mask |= rb << (j * other.n)
                    r &= r - 1
                rows.append(mask)
        return BoolMatrix(self.m * other.m, self.n * other.n, tuple(rows))

    def __str__(self):
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "." for j in range(self.n)) for r in self.rows
        )


# ---------------------------------------------------------------------------
# degree statistics


def avg_degree(M: BoolMatrix) -> float:
    """Average degree of the bipartite graph: 2 * ones / (m + n)."""
    return 2.0 * M.count_ones / (M.m + M.n)


def is_four_cycle_free(M: BoolMatrix) -> bool:
    """True iff no 2x2 all-ones submatrix: every row pair shares <= 1 column."""
    rows = [r for r in M.rows if r.bit_count() >= 2]
    rows.sort(key=lambda r: -r.bit_count())
    for a in range(len(rows)):
        ra = rows[a]
        for b in range(a + 1, len(rows)):
            if (ra & rows[b]).bit_count() >= 2:
                return False
    return True


def has_allones_submatrix(
    M: BoolMatrix, t: int
) -> tuple[bool, tuple[list[int], list[int]] | None]:
    """Search for a t x t all-ones submatrix; returns (found, (rows, cols))."""
    if t < 1:
        raise InputError("t must be >= 1")
    if t > min(M.m, M.n):
        return False, None
    order = sorted(range(M.m), key=lambda i: -M.rows[i].bit_count())
    rows = [M.rows[i] for i in order]

    chosen: list[int] = []

    def search(start: int, inter: int) -> list[int] | None:
        if len(chosen) == t:
            return chosen.copy()
        # not enough candidate rows left
        if M.m - start < t - len(chosen):
            return None
        for a in range(start, M.m):
            nxt = inter & rows[a]
            if nxt.bit_count() >= t:
                chosen.append(a)
                got = search(a + 1, nxt)
                if got is not None:
                    return got
                chosen.pop()
        return None

    full = (1 << M.n) - 1
    found = search(0, full)
    if found is None:
        return False, None
    inter = full
    for a in found:
        inter &= rows[a]
    cols = []
    while inter and len(cols) < t:
        cols.append((inter & -inter).bit_length() - 1)
        inter &= inter - 1
    return True, (sorted(order[a] for a in found), cols)


# ---------------------------------------------------------------------------
# degeneracy


@dataclass(frozen=True)
class DegeneracyResult:
    """Output of min-degree peeling over the combined row+column vertex pool.

    `order` lists ('R', i) / ('C', j) tags in peel order; every vertex has at
    most `value` neighbours appearing later in the order.  `core_rows` x
    `core_cols` is a submatrix whose minimum row/column degree is exactly
    `value` (for value >= 1).
    """

    value: int
    order: tuple[tuple[str, int], ...]
    core_rows: tuple[int, ...]
    core_cols: tuple[int, ...]


def degeneracy(M: BoolMatrix) -> DegeneracyResult:
    """Degeneracy of the bipartite graph, by joint min-degree peeling.

    Ties are broken by lowest combined index (rows 0..m-1, then columns
    m..m+n-1) for determinism.
    """
    m, n = M.m, M.n
    V = m + n
    adj_rows = list(M.rows)  # row i -> bitset of columns
    adj_cols = M.col_masks()  # col j -> bitset of rows
    deg = [r.bit_count() for r in adj_rows] + [c.bit_count() for c in adj_cols]
    alive = [True] * V
    heap = [(deg[v], v) for v in range(V)]
    heapq.heapify(heap)

    order: list[tuple[str, int]] = []
    value = 0
    core: tuple[list[int], list[int]] | None = None
    remaining = set(range(V))

    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        if d > value:
            value = d
            rows_left = sorted(u for u in remaining if u < m)
            cols_left = sorted(u - m for u in remaining if u >= m)
            core = (rows_left, cols_left)
        alive[v] = False
        remaining.discard(v)
        order.append(("R", v) if v < m else ("C", v - m))
        if v < m:
            nb = adj_rows[v]
            while nb:
                j = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                adj_cols[j] &= ~(1 << v)
                deg[m + j] -= 1
                heapq.heappush(heap, (deg[m + j], m + j))
            adj_rows[v] = 0
        else:
            j = v - m
            nb = adj_cols[j]
            while nb:
                i = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                adj_rows[i] &= ~(1 << j)
                deg[i] -= 1
                heapq.heappush(heap, (deg[i], i))
            adj_cols[j] = 0

    if core is None:
        # all-zero matrix: value 0, the whole matrix is a (degenerate) core
        core = (list(range(m)), list(range(n)))
    return DegeneracyResult(value, tuple(order), tuple(core[0]), tuple(core[1]))


def count_squares(M: BoolMatrix) -> int:
    """Number of 4-tuples (i, i', j, j') with all four cells 1; equals ||M||_4^4."""
    A = M.to_dense(dtype=np.int64)
    if M.m <= M.n:
        G = A @ A.T
    else:
        G = A.T @ A
    return int(np.sum(G * G))


# ---------------------------------------------------------------------------
# exact densest subgraph (maximum average degree) via min-cut binary search


class _Dinic:
    def __init__(self, size: int):
        self.size = size
        self.graph: list[list[list]] = [[] for _ in range(size)]

    def add_edge(self, u: int, v: int, cap: float):
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0.0, len(self.graph[u]) - 1])

    def _bfs(self, s: int, t: int, eps: float) -> bool:
        self.level = [-1] * self.size
        self.level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.graph[u]:
                if e[1] > eps and self.level[e[0]] < 0:
                    self.level[e[0]] = self.level[u] + 1
                    q.append(e[0])
        return self.level[t] >= 0

    def _dfs(self, u: int, t: int, f: float, eps: float) -> float:
        if u == t:
            return f
        while self.it[u] < len(self.graph[u]):
            e = self.graph[u][self.it[u]]
            v = e[0]
            if e[1] > eps and self.level[v] == self.level[u] + 1:
                d = self._dfs(v, t, min(f, e[1]), eps)
                if d > eps:
                    e[1] -= d
                    self.graph[v][e[2]][1] += d
                    return d
            self.it[u] += 1
        return 0.0

    def max_flow(self, s: int, t: int, eps: float = 1e-9) -> float:
        flow = 0.0
        while self._bfs(s, t, eps):
            self.it = [0] * self.size
            while True:
                f = self._dfs(s, t, float("inf"), eps)
                if f <= eps:
                    break
                flow += f
        return flow

    def source_side(self, s: int, eps: float = 1e-9) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.graph[u]:
                if e[1] > eps and e[0] not in seen:
                    seen.add(e[0])
                    q.append(e[0])
        return seen


def _densest_cut(M: BoolMatrix, lam: float) -> set[int] | None:
    """Return a vertex set S with e(S) > lam*|S| if one exists, else None.

    Goldberg's construction: min cut equals 2E - 2*max_S (e(S) - lam*|S|).
    """
    m, n = M.m, M.n
    V = m + n
    E = M.count_ones
    s, t = V, V + 1
    net = _Dinic(V + 2)
    degs = M.row_degrees() + M.col_degrees()
    for v in range(V):
        if degs[v] > 0:
            net.add_edge(s, v, float(degs[v]))
        net.add_edge(v, t, 2.0 * lam)
    for i in range(m):
        r = M.rows[i]
        while r:
            j = (r & -r).bit_length() - 1
            r &= r - 1
            net.add_edge(i, m + j, 1.0)
            net.add_edge(m + j, i, 1.0)
    flow = net.max_flow(s, t)
    slack = 2.0 * E - flow
    if slack <= 1e-7 * max(1.0, 2.0 * E):
        return None
    side = net.source_side(s)
    side.discard(s)
    return side if side else None


def max_avg_degree_subgraph(M: BoolMatrix) -> tuple[list[int], list[int], float]:
    """Induced submatrix exactly maximizing 2*ones/(rows+cols).

    Binary search on the density threshold with a min-cut feasibility test;
    the search interval is shrunk below the minimum gap between distinct
    rational densities, which makes the final cut exact.
    """
    E = M.count_ones
    if E == 0:
        raise InputError("no edges")
    V = M.m + M.n
    lo, hi = 0.0, float(E) + 1.0
    resolution = 1.0 / (V * V + 1.0)
    best: set[int] | None = None
    while hi - lo > resolution:
        mid = (lo + hi) / 2.0
        S = _densest_cut(M, mid)
        if S is not None:
            lo = mid
            best = S
        else:
            hi = mid
    if best is None:
        S = _densest_cut(M, lo)
        if S is None:
            raise AssertionError("density search failed to find a witness")
        best = S
    rows = sorted(v for v in best if v < M.m)
    cols = sorted(v - M.m for v in best if v >= M.m)
    ones = sum(1 for i in rows for j in cols if M.cell(i, j))
    density = 2.0 * ones / (len(rows) + len(cols))
    return rows, cols, density


# ---------------------------------------------------------------------------
# sparse text format ".bmx"


def write_bmx(M: BoolMatrix, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"{M.m} {M.n} {M.count_ones}\n")
        for i, j in M.coords():
            fh.write(f"{i} {j}\n")


def parse_bmx(text: str) -> BoolMatrix:
    """Parse the sparse format: `m n nnz` then nnz `i j` lines in ascending
    row-major order (repeated pairs allowed, out-of-order rejected)."""
    lines = text.splitlines()
    if not lines:
        raise InputError("empty .bmx input (line 1)")
    try:
        m, n, nnz = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise InputError(f"bad header (line 1): {exc}") from exc
    coords = []
    prev = (-1, -1)
    for k in range(nnz):
        lineno = k + 2
        if k + 1 >= len(lines):
            raise InputError(f"unexpected end of file (line {lineno})")
        try:
            i, j = (int(x) for x in lines[k + 1].split())
        except ValueError as exc:
            raise InputError(f"bad coordinate (line {lineno}): {exc}") from exc
        if not (0 <= i < m and 0 <= j < n):
            raise InputError(f"coordinate ({i}, {j}) out of range (line {lineno})")
        if (i, j) < prev:
            raise InputError(f"coordinates out of row-major order (line {lineno})")
        prev = (i, j)
        coords.append((i, j))
    return BoolMatrix.from_coords(m, n, coords)


def read_bmx(path: str) -> BoolMatrix:
    with open(path) as fh:
        return parse_bmx(fh.read())
