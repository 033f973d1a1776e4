import numpy as np
import pytest

from gsscodes import linalg
from gsscodes.blocks import (
    BlockCode,
    MonomialIsometry,
    adjoint_isometry,
    apply_isometry,
    block_weight,
    from_matrix,
    q_ary_image,
    word_image,
    word_preimage,
)
from gsscodes.fields import FieldTower
from gsscodes.properties import random_code


def test_image_of_codewords_is_image_code(gf8, rng):
    C = random_code(gf8.top, 5, 2, rng)
    img = q_ary_image(C, gf8)
    assert img.k_q == C.k * gf8.m and img.r == 3 and img.n == 5
    for _ in range(10):
        c = C.encode(gf8.top.random(rng, C.k))
        x = word_image(c, gf8)
        assert img.contains(x)
        assert np.array_equal(word_preimage(x, gf8), c)
        assert block_weight(x, 3) == np.count_nonzero(c)


def test_isometry_matrix_inverse_and_compose(rng):
    F = FieldTower(2, 1, 1).top
    f = MonomialIsometry.random(F, 5, 3, rng)
    g = MonomialIsometry.random(F, 5, 3, rng)
    x = F.random(rng, 15)
    assert np.array_equal(f.apply_word(x), linalg.matmul(x[None, :], f.matrix(), F)[0])
    assert np.array_equal(f.inverse().apply_word(f.apply_word(x)), x)
    assert np.array_equal(f.compose(g).apply_word(x), f.apply_word(g.apply_word(x)))
    assert block_weight(f.apply_word(x), 3) == block_weight(x, 3)
    h = from_matrix(f.matrix(), 5, 3, F)
    assert np.array_equal(h.perm, f.perm) and np.array_equal(h.mats, f.mats)


def test_block_permutation_convention(rng):
    F = FieldTower(2, 1, 1).top
    perm = np.array([2, 0, 1])
    f = MonomialIsometry(perm, np.broadcast_to(np.eye(2, dtype=np.int64), (3, 2, 2)), F)
    x = np.array([1, 0, 0, 1, 1, 1])
    assert f.apply_word(x).tolist() == [1, 1, 1, 0, 0, 1]


def test_adjoint_duality(gf8, rng):
    C = q_ary_image(random_code(gf8.top, 4, 2, rng), gf8)
    f = MonomialIsometry.random(gf8.base, 4, 3, rng, permute=False)
    assert apply_isometry(C, f).dual() == apply_isometry(C.dual(), adjoint_isometry(f))
    with pytest.raises(ValueError):
        adjoint_isometry(MonomialIsometry.random(gf8.base, 4, 3, rng))


def test_singular_block_rejected():
    F = FieldTower(2, 1, 1).top
    with pytest.raises(ValueError):
        MonomialIsometry([0], np.zeros((1, 2, 2), dtype=np.int64), F)
    with pytest.raises(ValueError):
        MonomialIsometry([0, 0], np.broadcast_to(np.eye(2, dtype=np.int64), (2, 2, 2)), F)


def test_block_code_basics():
    F = FieldTower(2, 1, 1).top
    B = BlockCode(F, 2, 3, np.array([[1, 0, 1, 1, 0, 0], [0, 1, 0, 0, 1, 1]]))
    assert B.k_q == 2 and B.pseudo_dimension == 1 and B.d == 2
    assert B.permute_blocks([1, 2, 0]).G.shape == (2, 6)
    with pytest.raises(ValueError):
        BlockCode(F, 2, 4, B.linear)
