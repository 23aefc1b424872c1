"""Named matrix families: the point-line incidence matrices P(q,p) and
P_p(q,p), and the randomized dense low-norm construction built from a
nearly-disjoint set system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boolmat import BoolMatrix
from .errors import InputError
from .gamma2 import FactorizationCert
from .seeding import split_seed


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def gen_P_modp(q: int, p: int) -> BoolMatrix:
    """qp x qp matrix indexed by [q] x {0..p-1}: cell ((x,x'),(y,y')) = 1 iff
    x*y + x' = y' (mod p).  Every row and column has exactly q ones."""
    if not _is_prime(p):
        raise InputError(f"p={p} is not prime")
    if not 1 <= q <= p - 1:
        raise InputError(f"q must satisfy 1 <= q <= p-1, got q={q}, p={p}")
    coords = []
    for x in range(1, q + 1):
        for xp in range(p):
            i = (x - 1) * p + xp
            for y in range(1, q + 1):
                yp = (x * y + xp) % p
                coords.append((i, (y - 1) * p + yp))
    return BoolMatrix.from_coords(q * p, q * p, coords)


def gen_P_real(q: int, p: int) -> BoolMatrix:
    """Same incidence without the modulus: cell = 1 iff x*y + x' = y' over Z."""
    if not 1 <= q <= p:
        raise InputError(f"q must satisfy 1 <= q <= p, got q={q}, p={p}")
    coords = []
    for x in range(1, q + 1):
        for xp in range(p):
            i = (x - 1) * p + xp
            for y in range(1, q + 1):
                yp = x * y + xp
                if yp < p:
                    coords.append((i, (y - 1) * p + yp))
    return BoolMatrix.from_coords(q * p, q * p, coords)


@dataclass(frozen=True)
class SetSystemConstruction:
    """A complement-of-product construction M = J - U V with certified norm.

    `family` is a pruned random family of ell-subsets of [m] with pairwise
    intersections of size <= 1, split into halves A and B; M0 = UV is then
    Boolean and the factorization (all-ones rank 1) + (-U, V) certifies
    gamma_2(M) <= ell + 1.
    """

    ell: int
    m: int
    gamma: float
    seed: int
    retries: int
    family: tuple[tuple[int, ...], ...]
    a_half: tuple[int, ...]  # indices into family
    b_half: tuple[int, ...]
    m0: BoolMatrix
    matrix: BoolMatrix
    cert: FactorizationCert

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "ell": self.ell,
            "m": self.m,
            "seed": self.seed,
            "retries": self.retries,
            "family_size": len(self.family),
            "n": len(self.a_half),
            "cert_value": format(self.cert.value, ".12g"),
        }


def _sample_family(m: int, ell: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Binomial(C(m, ell), p) many distinct ell-subsets, uniform; agrees in
    distribution with independent inclusion of every subset with prob p."""
    total = math.comb(m, ell)
    p = m ** (1.5 - ell)
    size = int(rng.binomial(total, min(p, 1.0)))
    chosen: set[tuple[int, ...]] = set()
    while len(chosen) < size:
        pick = tuple(sorted(rng.choice(m, size=ell, replace=False).tolist()))
        chosen.add(pick)
    return sorted(chosen)


def gen_setsystem(gamma: float, m: int, seed: int) -> SetSystemConstruction:
    """Randomized construction with gamma_2 certificate value <= floor(gamma-1)+1.

    Retries with an incremented sub-seed (up to 16 times) when the pruned
    family is too small to split.
    """
    if gamma < 3:
        raise InputError("gamma must be >= 3 (nominally > 4)")
    ell = int(math.floor(gamma - 1))
    if ell < 2:
        raise InputError(f"ell = floor(gamma-1) = {ell} must be >= 2")
    if m < ell + 1:
        raise InputError(f"ground set m={m} too small for ell={ell}")

    last_size = 0
    for attempt in range(16):
        rng = np.random.default_rng(split_seed(seed, 0x5E7, attempt))
        family = _sample_family(m, ell, rng)
        # prune: remove the lexicographically later set of each offending
        # pair, scanning pairs in lexicographic order
        keep = []
        removed = [False] * len(family)
        for i in range(len(family)):
            if removed[i]:
                continue
            si = set(family[i])
            for j in range(i + 1, len(family)):
                if not removed[j] and len(si.intersection(family[j])) >= 2:
                    removed[j] = True
            keep.append(family[i])
        last_size = len(keep)
        if last_size < 2:
            continue
        n = last_size // 2
        a_idx = tuple(range(n))
        b_idx = tuple(range(n, 2 * n))
        U = np.zeros((n, m))
        V = np.zeros((m, n))
        for r, fi in enumerate(a_idx):
            for e in keep[fi]:
                U[r, e] = 1.0
        for cidx, fi in enumerate(b_idx):
            for e in keep[fi]:
                V[e, cidx] = 1.0
        prod = U @ V
        if not np.isin(prod, (0.0, 1.0)).all():
            raise AssertionError("M0 not Boolean despite pruned intersections")
        m0 = BoolMatrix.from_dense(prod)
        target = np.ones((n, n)) - prod
        matrix = BoolMatrix.from_dense(target)
        cert = FactorizationCert(
            ((np.ones((n, 1)), np.ones((1, n))), (-U, V)), target
        )
        return SetSystemConstruction(
            ell=ell,
            m=m,
            gamma=gamma,
            seed=seed,
            retries=attempt,
            family=tuple(tuple(s) for s in keep),
            a_half=a_idx,
            b_half=b_idx,
            m0=m0,
            matrix=matrix,
            cert=cert,
        )
    raise InputError(
        f"set-system generation degenerated after 16 retries "
        f"(expected about {m ** 1.5:.0f} sets, last pruned size {last_size})"
    )
