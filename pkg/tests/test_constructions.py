import itertools
import math

import numpy as np
import pytest

from conftest import oracle_has_ktt
from gamma2lab import constructions as cons
from gamma2lab.boolmat import BoolMatrix, degeneracy, is_four_cycle_free
from gamma2lab.errors import InputError


class TestPModp:
    def test_2_3_is_regular(self):
        M = cons.gen_P_modp(2, 3)
        assert M.m == M.n == 6
        assert all(d == 2 for d in M.row_degrees())
        assert all(d == 2 for d in M.col_degrees())

    def test_entry_formula(self):
        # row (x, x') = (1, 0), column (y, y') = (1, 1): 1*1 + 0 = 1 mod 5
        M = cons.gen_P_modp(3, 5)
        row = (1 - 1) * 5 + 0
        col = (1 - 1) * 5 + 1
        assert M.cell(row, col) == 1

    def test_degeneracy_equals_q(self):
        assert degeneracy(cons.gen_P_modp(3, 5)).value == 3

    def test_four_cycle_free(self):
        for q, p in [(2, 3), (3, 5), (4, 7)]:
            assert is_four_cycle_free(cons.gen_P_modp(q, p))

    def test_bad_q(self):
        with pytest.raises(InputError):
            cons.gen_P_modp(5, 5)
        with pytest.raises(InputError):
            cons.gen_P_modp(0, 5)

    def test_not_prime(self):
        with pytest.raises(InputError):
            cons.gen_P_modp(2, 9)


class TestPReal:
    def test_1_2_enumeration(self):
        # q = 1 means x = y = 1, so cells are (x', y') with 1 + x' = y'
        M = cons.gen_P_real(1, 2)
        assert M.m == M.n == 2
        expected = {(xp, yp) for xp in range(2) for yp in range(2) if 1 + xp == yp}
        assert set(M.coords()) == expected

    def test_2_5_nonempty(self):
        assert cons.gen_P_real(2, 5).count_ones >= 1

    def test_ones_quadratic_lower_bound(self):
        # at least q^2/4 ones when q <= sqrt(p)
        assert cons.gen_P_real(2, 9).count_ones >= 1
        assert cons.gen_P_real(3, 9).count_ones >= 9 / 4

    def test_range_check(self):
        with pytest.raises(InputError):
            cons.gen_P_real(0, 3)
        with pytest.raises(InputError):
            cons.gen_P_real(4, 3)


class TestSetSystem:
    def test_invariants_gamma4(self):
        for m in (40, 60):
            c = cons.gen_setsystem(4.0, m, seed=1)
            assert c.ell == 3
            # pairwise intersections <= 1
            fam = [set(s) for s in c.family]
            for A, B in itertools.combinations(fam, 2):
                assert len(A & B) <= 1
            # M0 Boolean by construction of the certificate product
            U = c.cert.parts[1][0]
            V = c.cert.parts[1][1]
            prod = (-U) @ V
            assert np.all((prod == 0) | (prod == 1))
            # M = J - M0
            J = np.ones((c.matrix.m, c.matrix.n))
            assert np.array_equal(c.matrix.to_dense(), J - c.m0.to_dense())
            # certificate bound
            assert c.cert.verify()
            assert c.cert.value <= c.ell + 1 + 1e-9

    def test_determinism(self):
        a = cons.gen_setsystem(4.0, 40, seed=5)
        b = cons.gen_setsystem(4.0, 40, seed=5)
        assert a.family == b.family and a.matrix == b.matrix

    def test_gamma_below_three_rejected(self):
        with pytest.raises(InputError):
            cons.gen_setsystem(2.0, 40, seed=0)

    def test_allones_threshold_small_instance(self):
        # brute-force: no t x t all-ones submatrix for t > 8 * 2^-ell * n
        c = cons.gen_setsystem(4.0, 20, seed=2)
        n = c.matrix.m
        t = math.floor(8 * 2.0**-c.ell * n) + 1
        if t <= min(c.matrix.m, c.matrix.n):
            assert not oracle_has_ktt(c.matrix, t)
