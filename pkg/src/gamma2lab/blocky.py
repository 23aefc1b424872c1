"""Blocky-matrix recognition and thin blocky decompositions.

A blocky matrix is a blow-up of a permutation matrix: disjoint all-ones
rectangles.  These are exactly the Boolean matrices of gamma-2 norm 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import boolmat as bm
from .boolmat import BoolMatrix
from .errors import InputError


@dataclass(frozen=True)
class BlockyMatrix:
    """Blocky structure as per-row / per-column block labels in {0, ..., k};
    label 0 marks rows/columns outside every block."""

    m: int
    n: int
    row_label: tuple[int, ...]
    col_label: tuple[int, ...]
    k: int

    def to_boolmatrix(self) -> BoolMatrix:
        rows = []
        for i in range(self.m):
            mask = 0
            li = self.row_label[i]
            if li:
                for j in range(self.n):
                    if self.col_label[j] == li:
                        mask |= 1 << j
            rows.append(mask)
        return BoolMatrix(self.m, self.n, tuple(rows))

    def block_sizes(self) -> list[tuple[int, int]]:
        out = []
        for b in range(1, self.k + 1):
            out.append(
                (self.row_label.count(b), self.col_label.count(b))
            )
        return out

    def is_thin(self) -> bool:
        return all(a == 1 or b == 1 for a, b in self.block_sizes())

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "row_label": list(self.row_label),
            "col_label": list(self.col_label),
        }


def recognize_blocky(M: BoolMatrix) -> Optional[BlockyMatrix]:
    """Labels iff rows partition into groups of identical support with the
    supports pairwise disjoint; blocks are numbered by smallest row index."""
    groups: dict[int, list[int]] = {}
    for i, r in enumerate(M.rows):
        if r:
            groups.setdefault(r, []).append(i)
    supports = list(groups)
    union = 0
    for s in supports:
        if union & s:
            return None
        union |= s
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    row_label = [0] * M.m
    col_label = [0] * M.n
    for b, (support, members) in enumerate(ordered, start=1):
        for i in members:
            row_label[i] = b
        s = support
        while s:
            j = (s & -s).bit_length() - 1
            col_label[j] = b
            s &= s - 1
    return BlockyMatrix(M.m, M.n, tuple(row_label), tuple(col_label), len(ordered))


@dataclass(frozen=True)
class ThinBlockyDecomposition:
    """Thin blocky terms with disjoint supports summing to `target`."""

    terms: tuple[BlockyMatrix, ...]
    target: BoolMatrix

    def verify(self) -> bool:
        acc = [0] * self.target.m
        for term in self.terms:
            if not term.is_thin():
                return False
            B = term.to_boolmatrix()
            if B.count_ones == 0:
                return False  # empty terms must have been dropped
            for i, r in enumerate(B.rows):
                if acc[i] & r:
                    return False  # overlapping supports
                acc[i] |= r
        if tuple(acc) != self.target.rows:
            return False
        d = bm.degeneracy(self.target).value
        return d / 2 <= len(self.terms) <= 2 * d

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.terms]}


def _peel_thin_terms_by_row(rows: list[int], m: int, n: int) -> list[BoolMatrix]:
    """Strip the l-th one entry of every row (ascending column) into term l."""
    rows = list(rows)
    terms = []
    while any(rows):
        mask_rows = []
        for i in range(m):
            r = rows[i]
            if r:
                low = r & -r
                mask_rows.append(low)
                rows[i] = r & ~low
            else:
                mask_rows.append(0)
        terms.append(BoolMatrix(m, n, tuple(mask_rows)))
    return terms


def thin_decompose(M: BoolMatrix) -> ThinBlockyDecomposition:
    """Degeneracy-order split into a row-bounded and a column-bounded part,
    then one thin term per entry rank within each row / column.

    When one side's maximum degree is already at most dgc(M) the whole matrix
    goes to that side, giving at most dgc(M) terms instead of up to 2*dgc(M).
    """
    res = bm.degeneracy(M)
    m1_rows = [0] * M.m
    m2_rows = [0] * M.m
    if M.count_ones and max(M.row_degrees()) <= res.value:
        m1_rows = list(M.rows)
    elif M.count_ones and max(M.col_degrees()) <= res.value:
        m2_rows = list(M.rows)
    else:
        pos = {tag: k for k, tag in enumerate(res.order)}
        for i, j in M.coords():
            if pos[("R", i)] < pos[("C", j)]:
                m1_rows[i] |= 1 << j
            else:
                m2_rows[i] |= 1 << j
    terms = _peel_thin_terms_by_row(m1_rows, M.m, M.n)
    M2t = BoolMatrix(M.m, M.n, tuple(m2_rows)).transpose()
    terms += [T.transpose() for T in _peel_thin_terms_by_row(list(M2t.rows), M2t.m, M2t.n)]
    blocky_terms = []
    for T in terms:
        B = recognize_blocky(T)
        if B is None:
            raise AssertionError("thin term failed blocky recognition")
        blocky_terms.append(B)
    return ThinBlockyDecomposition(tuple(blocky_terms), M)


def verify_signed_combination(
    terms: list[tuple[int, BlockyMatrix]], M: BoolMatrix
) -> bool:
    """True iff sum of sign_k * B_k equals M entrywise over the integers."""
    acc = [[0] * M.n for _ in range(M.m)]
    for sign, B in terms:
        if sign not in (-1, 1):
            raise InputError(f"sign must be +1 or -1, got {sign}")
        if (B.m, B.n) != (M.m, M.n):
            raise InputError(f"shape mismatch: term {B.m}x{B.n} vs target {M.m}x{M.n}")
        mat = B.to_boolmatrix()
        for i in range(M.m):
            r = mat.rows[i]
            while r:
                j = (r & -r).bit_length() - 1
                acc[i][j] += sign
                r &= r - 1
    for i in range(M.m):
        for j in range(M.n):
            if acc[i][j] != M.cell(i, j):
                return False
    return True
