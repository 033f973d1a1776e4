import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gsscodes import linalg
from gsscodes.fields import FieldTower, FiniteField

GF2 = FiniteField.prime(2)
GF3 = FiniteField.prime(3)
GF4 = FieldTower(2, 1, 2).top


def brute_kernel(M, F):
    n = M.shape[1]
    out = []
    for x in itertools.product(range(F.order), repeat=n):
        x = np.array(x)
        if not linalg.matmul(M, x[:, None], F).any():
            out.append(tuple(x))
    return set(out)


def brute_rank(M, F):
    """log_q of the number of distinct row combinations."""
    words = set()
    for c in itertools.product(range(F.order), repeat=M.shape[0]):
        words.add(tuple(linalg.matmul(np.array(c)[None, :], M, F)[0]))
    return round(np.log(len(words)) / np.log(F.order))


@pytest.mark.parametrize("F", [GF2, GF3, GF4], ids=["GF2", "GF3", "GF4"])
def test_kernel_and_rank_against_enumeration(F):
    rng = np.random.default_rng(7)
    for _ in range(15):
        r, n = rng.integers(1, 4), rng.integers(1, 6)
        M = rng.integers(0, F.order, (r, n))
        K = linalg.right_kernel(M, F)
        assert linalg.rank(M, F) == brute_rank(M, F)
        assert K.shape[0] == n - linalg.rank(M, F)
        span = {tuple(linalg.matmul(np.array(c)[None, :], K, F)[0]) for c in itertools.product(range(F.order), repeat=K.shape[0])}
        assert span == brute_kernel(M, F)


@given(arrays(np.int64, st.tuples(st.integers(1, 40), st.integers(1, 140)), elements=st.integers(0, 1)))
@settings(max_examples=60, deadline=None)
def test_gf2_packed_matches_general_path(M):
    R1, k1, p1 = linalg.rref(M, GF2)
    R2, p2 = linalg._rref_general(M.copy(), GF2)
    assert k1 == len(p2) and p1 == p2
    assert np.array_equal(R1, R2)


def test_rref_is_reduced():
    rng = np.random.default_rng(3)
    M = rng.integers(0, 4, (5, 9))
    R, k, piv = linalg.rref(M, GF4)
    for i, c in enumerate(piv):
        col = R[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1
    assert not R[k:].any()
    assert linalg.row_space_equal(R[:k], M, GF4)


def test_systematic_form_with_and_without_permutation():
    G = np.array([[1, 1, 0, 1], [0, 0, 1, 1]])
    Gs, perm = linalg.systematic_form(G, GF2)
    assert perm.tolist() == [0, 2, 1, 3]
    assert np.array_equal(Gs[:, :2], np.eye(2, dtype=np.int64))
    assert linalg.row_space_equal(Gs, G[:, perm], GF2)
    with pytest.raises(ValueError):
        linalg.systematic_form(np.array([[1, 1], [1, 1]]), GF2)


def test_inverse_and_solve():
    rng = np.random.default_rng(5)
    for _ in range(20):
        A = rng.integers(0, 4, (4, 4))
        if linalg.rank(A, GF4) < 4:
            with pytest.raises(ValueError):
                linalg.inverse(A, GF4)
            continue
        Ai = linalg.inverse(A, GF4)
        assert np.array_equal(linalg.matmul(A, Ai, GF4), np.eye(4, dtype=np.int64))
        b = rng.integers(0, 4, 4)
        x = linalg.solve_left(A, b, GF4)
        assert np.array_equal(linalg.matmul(x[None, :], A, GF4)[0], b)
    assert linalg.solve_left(np.array([[1, 0]]), np.array([0, 1]), GF2) is None


def test_empty_matrices():
    K = linalg.right_kernel(np.zeros((0, 3), dtype=np.int64), GF2, cols=3)
    assert np.array_equal(K, np.eye(3, dtype=np.int64))
    assert linalg.rank(np.zeros((0, 3)), GF2) == 0


def test_text_roundtrip():
    M = np.array([[1, 0, 3], [2, 2, 1]])
    assert np.array_equal(linalg.parse_matrix(linalg.format_matrix(M)), M)
    with pytest.raises(ValueError):
        linalg.parse_matrix("1 2\n3", 4)
    with pytest.raises(ValueError):
        linalg.parse_matrix("1 5", 4)
