import numpy as np
import pytest

from conftest import FIG1_BLOCKY, HALF, random_boolmatrix
from gamma2lab import blocky as bk
from gamma2lab import gamma2 as g2
from gamma2lab.boolmat import BoolMatrix, degeneracy
from gamma2lab.constructions import gen_P_modp
from gamma2lab.errors import InputError


class TestRecognize:
    def test_figure_example(self):
        b = bk.recognize_blocky(FIG1_BLOCKY)
        assert b is not None and b.k == 4
        assert b.block_sizes() == [(2, 3), (3, 2), (2, 1), (1, 1)]
        assert b.to_boolmatrix() == FIG1_BLOCKY

    def test_identity(self):
        b = bk.recognize_blocky(BoolMatrix.identity(5))
        assert b is not None and b.k == 5

    def test_half_matrix_is_not_blocky(self):
        assert bk.recognize_blocky(HALF) is None

    def test_zero_rows_and_cols_get_label_zero(self):
        M = BoolMatrix.from_rows([[1, 0, 0], [0, 0, 0]])
        b = bk.recognize_blocky(M)
        assert b is not None
        assert b.row_label[1] == 0 and b.col_label[1] == b.col_label[2] == 0

    def test_reconstruction_round_trip(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            # build a random blocky matrix, then recognize it
            k = int(rng.integers(1, 4))
            m, n = 6, 6
            row_label = rng.integers(0, k + 1, size=m)
            col_label = rng.integers(0, k + 1, size=n)
            coords = [
                (i, j)
                for i in range(m)
                for j in range(n)
                if row_label[i] and row_label[i] == col_label[j]
            ]
            M = BoolMatrix.from_coords(m, n, coords)
            b = bk.recognize_blocky(M)
            assert b is not None and b.to_boolmatrix() == M


class TestThinDecompose:
    def test_identity_single_term(self):
        dec = bk.thin_decompose(BoolMatrix.identity(3))
        assert len(dec.terms) == 1
        assert dec.verify()

    def test_allones_2x2_two_terms(self):
        dec = bk.thin_decompose(BoolMatrix.ones(2, 2))
        assert len(dec.terms) == 2
        assert dec.verify()

    def test_point_line_family_sandwich(self):
        dec = bk.thin_decompose(gen_P_modp(3, 5))
        assert 2 <= len(dec.terms) <= 6  # dgc = 3
        assert dec.verify()

    def test_zero_matrix_empty(self):
        dec = bk.thin_decompose(BoolMatrix.zeros(2, 3))
        assert dec.terms == ()

    def test_terms_are_thin_blocky_with_counting_bound(self):
        rng = np.random.default_rng(1)
        for _ in range(15):
            M = random_boolmatrix(rng, 8, 8, 0.45)
            dec = bk.thin_decompose(M)
            assert dec.verify()
            for term in dec.terms:
                assert term.is_thin()
                assert bk.recognize_blocky(term.to_boolmatrix()) is not None
                # a thin blocky restricted to X x Y has <= |X| + |Y| - 1 ones
                T = term.to_boolmatrix()
                for _ in range(5):
                    rs = sorted(
                        rng.choice(T.m, size=int(rng.integers(1, T.m + 1)), replace=False).tolist()
                    )
                    cs = sorted(
                        rng.choice(T.n, size=int(rng.integers(1, T.n + 1)), replace=False).tolist()
                    )
                    assert T.submatrix(rs, cs).count_ones <= len(rs) + len(cs) - 1

    def test_term_count_sandwich(self):
        rng = np.random.default_rng(2)
        for _ in range(15):
            M = random_boolmatrix(rng, 10, 7, 0.4)
            if M.count_ones == 0:
                continue
            dec = bk.thin_decompose(M)
            d = degeneracy(M).value
            assert d / 2 <= len(dec.terms) <= 2 * d


class TestGamma2Consistency:
    def test_recognized_blocky_has_norm_one(self):
        assert g2.exact_gamma2(FIG1_BLOCKY) == pytest.approx(1.0, abs=1e-5)


class TestSignedCombination:
    def test_single_identity(self):
        I2 = bk.recognize_blocky(BoolMatrix.identity(2))
        assert bk.verify_signed_combination([(1, I2)], BoolMatrix.identity(2))

    def test_allones_minus_antidiagonal(self):
        J2 = bk.recognize_blocky(BoolMatrix.ones(2, 2))
        anti = bk.recognize_blocky(BoolMatrix.from_rows([[0, 1], [1, 0]]))
        assert bk.verify_signed_combination(
            [(1, J2), (-1, anti)], BoolMatrix.identity(2)
        )

    def test_wrong_target(self):
        I2 = bk.recognize_blocky(BoolMatrix.identity(2))
        assert not bk.verify_signed_combination([(1, I2)], BoolMatrix.ones(2, 2))

    def test_shape_mismatch(self):
        I2 = bk.recognize_blocky(BoolMatrix.identity(2))
        with pytest.raises(InputError):
            bk.verify_signed_combination([(1, I2)], BoolMatrix.identity(3))


def test_json_serialization():
    dec = bk.thin_decompose(BoolMatrix.ones(2, 2))
    payload = dec.to_json()
    assert len(payload["terms"]) == 2
    assert all("row_label" in t and "col_label" in t for t in payload["terms"])
