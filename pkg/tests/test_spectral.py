import math

import numpy as np
import pytest

from conftest import random_boolmatrix
from gamma2lab import spectral as sp
from gamma2lab.boolmat import BoolMatrix, count_squares
from gamma2lab.errors import InputError

PHI = (1 + math.sqrt(5)) / 2


def test_singular_values_identity():
    assert sp.singular_values(np.eye(3)) == pytest.approx([1, 1, 1])


def test_singular_values_allones():
    sv = sp.singular_values(np.ones((4, 4)))
    assert sv[0] == pytest.approx(4.0)
    assert np.all(sv[1:] == 0.0)


def test_singular_values_golden_ratio():
    # A^T A for [[1,1],[0,1]] has eigenvalues phi^2 and phi^-2
    sv = sp.singular_values(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert sv == pytest.approx([PHI, 1 / PHI])


def test_singular_values_descending_and_frobenius():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((5, 7))
    sv = sp.singular_values(A)
    assert len(sv) == 5
    assert all(sv[i] >= sv[i + 1] for i in range(4))
    assert np.sum(sv**2) == pytest.approx(np.sum(A**2), rel=1e-9)


def test_singular_values_nonfinite_rejected():
    with pytest.raises(InputError):
        sp.singular_values(np.array([[1.0, np.nan]]))


def test_schatten_identity_p1():
    assert sp.schatten_norm(np.eye(4), 1) == pytest.approx(4.0)


def test_schatten_allones_p4():
    assert sp.schatten_norm(np.ones((3, 3)), 4) == pytest.approx(3.0)


def test_schatten_p2_is_frobenius():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((5, 5))
    assert sp.schatten_norm(A, 2) == pytest.approx(math.sqrt(np.sum(A**2)))


def test_schatten_monotone_in_p():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((4, 4))
    values = [sp.schatten_norm(A, p) for p in (0.5, 1, 2, 4, 8)]
    assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))


def test_schatten_bad_p():
    with pytest.raises(InputError):
        sp.schatten_norm(np.eye(2), 0)


def test_trace_norm_identity_and_allones():
    assert sp.trace_norm(np.eye(5)) == pytest.approx(5.0)
    assert sp.trace_norm(np.ones((5, 5))) == pytest.approx(5.0)


def test_trace_norm_rank_one_unit():
    u = np.array([3.0, 4.0]) / 5.0
    v = np.array([1.0, 0.0, 0.0])
    assert sp.trace_norm(np.outer(u, v)) == pytest.approx(1.0)


def test_trace_norm_at_least_frobenius_at_least_spectral():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((6, 4))
    tr = sp.trace_norm(A)
    fro = sp.schatten_norm(A, 2)
    top = sp.singular_values(A)[0]
    assert tr >= fro - 1e-9 >= top - 1e-9


def test_hadamard():
    assert np.array_equal(sp.hadamard(np.eye(2), np.ones((2, 2))), np.eye(2))
    with pytest.raises(InputError):
        sp.hadamard(np.eye(2), np.eye(3))


def test_kronecker_block_diagonal():
    K = sp.kronecker(np.eye(2), np.ones((2, 2)))
    expected = np.zeros((4, 4))
    expected[:2, :2] = 1.0
    expected[2:, 2:] = 1.0
    assert np.array_equal(K, expected)


def test_direct_sum():
    assert np.array_equal(sp.direct_sum(np.eye(1), np.eye(1)), np.eye(2))


def test_fourth_power_matches_square_count():
    rng = np.random.default_rng(4)
    for _ in range(5):
        M = random_boolmatrix(rng, 6, 5, 0.5)
        s4 = sp.schatten_norm(M.to_dense(), 4) ** 4
        assert s4 == pytest.approx(count_squares(M), rel=1e-9, abs=1e-9)


def test_kronecker_singular_values_are_products():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((3, 4))
    B = rng.standard_normal((2, 5))
    sv = sp.singular_values(sp.kronecker(A, B))
    prods = sorted(
        (a * b for a in sp.singular_values(A) for b in sp.singular_values(B)),
        reverse=True,
    )[: len(sv)]
    assert sv == pytest.approx(prods, rel=1e-8, abs=1e-8)
