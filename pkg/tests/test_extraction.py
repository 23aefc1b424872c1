import numpy as np
import pytest

from conftest import random_boolmatrix
from gamma2lab import extraction as ext
from gamma2lab.boolmat import BoolMatrix, avg_degree
from gamma2lab.constructions import gen_P_modp
from gamma2lab.errors import CapabilityError, InputError


class TestRegularize:
    def test_regular_matrix_is_fixed_point(self):
        M = gen_P_modp(3, 5)
        reg = ext.regularize(M)
        reg.verify(M)
        assert len(reg.rows) == M.m and len(reg.cols) == M.n
        assert reg.d_prime == pytest.approx(3.0)

    def test_block_plus_isolated_row(self):
        M = BoolMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, 1], [0, 0, 0]])
        reg = ext.regularize(M)
        reg.verify(M)
        assert sorted(reg.rows) == [0, 1, 2] and sorted(reg.cols) == [0, 1, 2]

    def test_random_instances_verify(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            M = random_boolmatrix(rng, 40, 40, 0.2)
            ext.regularize(M).verify(M)

    def test_zero_matrix_rejected(self):
        with pytest.raises(InputError):
            ext.regularize(BoolMatrix.zeros(3, 3))

    def test_invariant_values(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            M = random_boolmatrix(rng, 20, 30, 0.25)
            reg = ext.regularize(M)
            N = M.submatrix(reg.rows, reg.cols)
            assert avg_degree(N) >= reg.d_prime - 1e-9
            assert reg.d_prime >= avg_degree(M) / 3 - 1e-9
            assert min(N.row_degrees() + N.col_degrees()) >= reg.d_prime / 2 - 1e-9
            capped = N.row_degrees() if reg.bounded_side == "row" else N.col_degrees()
            assert max(capped) <= 6 * reg.d_prime + 1e-9


class TestBiregularize:
    def test_regular_matrix(self):
        M = gen_P_modp(3, 5)
        cert = ext.biregularize(M)
        cert.verify(M)
        assert cert.a == cert.b == 3

    def test_stated_parameters(self):
        rng = np.random.default_rng(2)
        M = random_boolmatrix(rng, 30, 30, 0.3)
        cert = ext.biregularize(M)
        assert cert.p == pytest.approx(0.5)
        assert cert.q == pytest.approx(1.0 / (12 * np.log2(M.m + M.n)))
        assert cert.d == pytest.approx(avg_degree(M) / 2)

    def test_planted_skew_instance(self):
        # rows of degree 1 plus one dense column
        rows = [[1 if j == 0 else 0 for j in range(10)] for _ in range(10)]
        rows[0] = [1] * 10
        M = BoolMatrix.from_rows(rows)
        cert = ext.biregularize(M)
        cert.verify(M)

    def test_random_instances_verify(self):
        rng = np.random.default_rng(3)
        for k in range(20):
            M = random_boolmatrix(rng, 25, 35, 0.1 + 0.04 * (k % 5))
            if M.count_ones == 0:
                continue
            ext.biregularize(M).verify(M)

    def test_zero_matrix_rejected(self):
        with pytest.raises(InputError):
            ext.biregularize(BoolMatrix.zeros(4, 4))


class TestDenseSubmatrix:
    def test_z_one(self):
        M = BoolMatrix.from_rows([[0, 1], [0, 0]])
        rows, cols = ext.dense_submatrix(M, 1)
        assert M.cell(rows[0], cols[0]) == 1

    def test_planted_block_recovered(self):
        M = BoolMatrix.ones(4, 4).direct_sum(BoolMatrix.identity(8))
        rows, cols = ext.dense_submatrix(M, 4, enforce_precondition=False)
        assert rows == [0, 1, 2, 3] and cols == [0, 1, 2, 3]

    def test_precondition_enforced(self):
        M = gen_P_modp(2, 5)
        z_max, _ = ext.max_feasible_z(M)
        with pytest.raises(CapabilityError, match="max feasible z"):
            ext.dense_submatrix(M, max(z_max + 1, 2))

    def test_density_floor_on_random_instances(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            M = random_boolmatrix(rng, 30, 30, 0.5)
            _, alpha = ext.max_feasible_z(M)
            z = 5
            rows, cols = ext.dense_submatrix(M, z, enforce_precondition=False)
            assert len(rows) == len(cols) == z
            sub = M.submatrix(rows, cols)
            assert avg_degree(sub) >= alpha * z - 1e-9
            assert avg_degree(sub) <= z + 1e-9

    def test_determinism_under_seed(self):
        rng = np.random.default_rng(5)
        M = random_boolmatrix(rng, 30, 30, 0.4)
        a = ext.dense_submatrix(M, 4, seed=11, enforce_precondition=False)
        b = ext.dense_submatrix(M, 4, seed=11, enforce_precondition=False)
        assert a == b


class TestPipeline:
    def test_regular_family_is_fixed_point_of_composition(self):
        for q, p in [(2, 5), (3, 5), (3, 7)]:
            M = gen_P_modp(q, p)
            reg = ext.regularize(M)
            assert len(reg.rows) == M.m and len(reg.cols) == M.n
            cert = ext.biregularize(M)
            assert len(cert.rows) * len(cert.cols) == M.m * M.n
