import numpy as np
import pytest

from gsscodes import codes, gss, linalg, reference
from gsscodes.blocks import MonomialIsometry, apply_isometry, image_generator, q_ary_image
from gsscodes.codes import LinearCode, shorten, subfield_subcode
from gsscodes.fields import FieldTower
from gsscodes.properties import membership, random_grs
from gsscodes.rng import make_rng
from gsscodes.rs import DecodingFailure, GrsSpec, alternant_code

TOWERS = [FieldTower(2, 1, 2), FieldTower(2, 1, 3)]


def literal_adjoint_route(C, mon, tower):
    """Reference with the original step order: twist the image, dualize, keep
    the first coordinate of each block, permute, dualize."""
    F, m = tower.base, tower.m
    M = linalg.matmul(image_generator(C.G, tower), linalg.block_diag(mon.mats), F)
    H = linalg.right_kernel(M, F, cols=C.n * m)
    Hp = linalg.row_basis(H[:, ::m], F)
    return LinearCode.from_parity_check(F, Hp[:, mon.perm], n=C.n)


def definition_route(C, mon, tower):
    """S_(1,...,1) of mon applied to the q-ary image."""
    image = apply_isometry(q_ary_image(C, tower), mon)
    J = [i for i in range(C.n * tower.m) if i % tower.m]
    return shorten(image.linear, J)


# -- worked examples ---------------------------------------------------------


def test_shortened_examples(gf8, rs7_6):
    C = rs7_6.code()
    for u, G, d in ((reference.SHORTENED_U1, reference.SHORTENED_U1_GENERATOR, 2),
                    (reference.SHORTENED_U2, reference.SHORTENED_U2_GENERATOR, 3)):
        S = gss.s_u(C, u, gf8)
        assert linalg.row_space_equal(S.G, G, gf8.base)
        assert codes.min_distance_exhaustive(S) == d
    I, J = gss.position_sets(reference.SHORTENED_U1, 3)
    assert [i + 1 for i in I] == [2, 6, 9, 11, 14, 18, 21]
    H = q_ary_image(C, gf8).dual().G
    assert linalg.row_space_equal(linalg.row_basis(H[:, I], gf8.base), reference.SHORTENED_U1_PARITY, gf8.base)


def test_u_all_ones_is_subfield_subcode(gf8, rs7_5):
    C = rs7_5.code()
    assert gss.s_u(C, [1] * 7, gf8) == subfield_subcode(C, gf8)


def test_subspace_example_parameters(gf8, rs7_5):
    a = gf8.top.exp
    W = gss.SubspaceFamily.from_elements(gf8, [[a(i) for i in p] for p in reference.SUBSPACE_EXAMPLE_FAMILY_LOGS])
    B = gss.gss_w(rs7_5.code(), W)
    assert (B.linear.k, codes.min_distance_exhaustive(B.linear)) == (8, 3)
    assert (B.pseudo_dimension, B.d) == (4, 3)
    assert membership(B, W, rs7_5.code())


def test_printed_subspace_generator_is_the_uniform_family(gf8, rs7_5):
    """The printed 8x14 matrix spans C cap V^7 with V = <1, a>."""
    V1 = gf8.phi(np.array([1, 2]))
    printed = reference.SUBSPACE_EXAMPLE_GENERATOR
    assert linalg.row_space_equal(gss.subspace_subcode(rs7_5.code(), V1, gf8).G, printed, gf8.base)
    keep = [c for c in range(21) if c + 1 not in reference.SUBSPACE_EXAMPLE_DELETED_COLUMNS]
    assert linalg.matmul(reference.RS7_5_IMAGE_DUAL[:, keep], printed.T, gf8.base).any()


# -- algorithm equivalences ---------------------------------------------------


@pytest.mark.parametrize("seed", range(3))
def test_adjoint_route_matches_literal_order_and_definition(seed):
    rng = make_rng(seed)
    for _ in range(20):
        spec = random_grs(TOWERS[int(rng.integers(2))], rng)
        T, C = spec.tower, spec.code()
        mon = MonomialIsometry.random(T.base, spec.n, T.m, rng)
        fast = gss.gss_algorithm2(C, mon, T)
        assert fast == literal_adjoint_route(C, mon, T)
        assert fast == definition_route(C, mon, T)


def test_identity_isometry_gives_subfield_subcode(rs7_5):
    T = rs7_5.tower
    mon = MonomialIsometry.identity(T.base, 7, 3)
    assert gss.gss_algorithm2(rs7_5.code(), mon, T) == subfield_subcode(rs7_5.code(), T)
    assert gss.gss_algorithm3(rs7_5.code(), None, np.ones(7, dtype=np.int64), T) == subfield_subcode(rs7_5.code(), T)


def test_multiplier_route_is_subfield_subcode_of_scaled_code(rng):
    """y_i = a_i: the codes x with (x_i a_i) in C, i.e. C scaled by a_i^-1."""
    for _ in range(20):
        spec = random_grs(TOWERS[1], rng)
        T, F = spec.tower, spec.tower.top
        y = F.random(rng, spec.n, nonzero=True)
        scaled = LinearCode(F, F.mul(spec.code().G, F.inv(y)[None, :]))
        assert gss.gss_algorithm3(spec.code(), None, y, T) == subfield_subcode(scaled, T)


def test_diagonal_multiplication_isometry_is_grs_equivalent(rng):
    """f_i = M_{a_i}: GSS equals the subfield subcode of the GRS code with multipliers v_i / y_i."""
    spec = random_grs(TOWERS[1], rng)
    T, F = spec.tower, spec.tower.top
    a = F.random(rng, spec.n, nonzero=True)
    mon = MonomialIsometry(np.arange(spec.n), T.mult_matrix(a), T.base)
    y = gss.y_from_isometry(mon, T)
    assert np.array_equal(y, F.inv(a))
    lhs = gss.gss_algorithm2(spec.code(), mon, T)
    assert lhs == alternant_code(spec.with_multipliers(F.mul(spec.multipliers, a)))


def test_zero_multiplier_rejected(rs7_5):
    with pytest.raises(ValueError):
        gss.gss_algorithm3(rs7_5.code(), None, np.zeros(7, dtype=np.int64), rs7_5.tower)


# -- subspace subcodes --------------------------------------------------------


def test_subspace_subcode_reductions(gf8, rs7_5):
    C = rs7_5.code()
    assert gss.subspace_subcode(C, np.eye(3, dtype=np.int64), gf8).linear == q_ary_image(C, gf8).linear
    assert gss.subspace_subcode(C, [[1, 0, 0]], gf8).linear == subfield_subcode(C, gf8)
    V = np.array([[1, 1, 0], [0, 1, 1]])
    assert gss.subspace_subcode(C, V, gf8) == gss.gss_w(C, gss.SubspaceFamily.uniform(gf8, V, 7))


def test_change_of_basis_gives_isometric_code(gf8, rs7_5, rng):
    C = rs7_5.code()
    V = np.array([[1, 0, 1], [0, 1, 1]])
    A = np.array([[1, 1], [1, 0]])
    V2 = linalg.matmul(A, V, gf8.base)
    S1, S2 = gss.subspace_subcode(C, V, gf8), gss.subspace_subcode(C, V2, gf8)
    mon = MonomialIsometry(np.arange(7), np.broadcast_to(A, (7, 2, 2)), gf8.base)
    assert apply_isometry(S2, mon) == S1
    assert (S1.k_q, S1.d) == (S2.k_q, S2.d)


def test_rank_deficient_subspace_rejected(gf8, rs7_5):
    with pytest.raises(ValueError):
        gss.subspace_subcode(rs7_5.code(), [[1, 0, 0], [1, 0, 0]], gf8)
    with pytest.raises(ValueError):
        gss.SubspaceFamily(gf8, np.zeros((7, 2, 3), dtype=np.int64))


@pytest.mark.parametrize("r", [1, 2])
def test_dimension_and_distance_bounds(r):
    rng = make_rng(r)
    for _ in range(100):
        spec = random_grs(TOWERS[int(rng.integers(2))], rng, n_max=8)
        T = spec.tower
        if r > T.m:
            continue
        W = gss.SubspaceFamily.random(T, spec.n, r, rng)
        B = gss.gss_w(spec.code(), W)
        assert B.k_q >= spec.k * T.m - spec.n * (T.m - r)
        assert membership(B, W, spec.code())
        if B.k_q:
            assert B.d >= spec.d
        u = rng.integers(1, T.m + 1, size=spec.n)
        S = gss.s_u(spec.code(), u, T)
        assert S.k >= spec.n - T.m * (spec.n - spec.k)
        if S.k:
            assert S.d >= spec.d


def test_family_text_roundtrip(gf8, rng):
    W = gss.SubspaceFamily.random(gf8, 5, 2, rng)
    W2 = gss.SubspaceFamily.from_text(gf8, W.to_text())
    assert np.array_equal(W.bases, W2.bases)
    with pytest.raises(ValueError):
        gss.SubspaceFamily.from_text(gf8, "X 2\n1 0 0\n")


def test_embed_project_roundtrip(gf8, rng):
    W = gss.SubspaceFamily.random(gf8, 6, 2, rng)
    x = gf8.base.random(rng, 12)
    assert np.array_equal(W.project(W.embed(x)), x)
    outside = np.zeros(6, dtype=np.int64)
    for v in range(1, 8):
        outside[0] = v
        if W.project(outside) is None:
            break
    assert W.project(outside) is None


# -- decoding -----------------------------------------------------------------


def test_decode_subspace_code_block_errors(gf8, rs7_5):
    rng = make_rng(9)
    W = gss.SubspaceFamily.random(gf8, 7, 2, rng)
    B = gss.gss_w(rs7_5.code(), W)
    perm = rng.permutation(7)
    Bp = B.permute_blocks(perm)
    for _ in range(200):
        c = Bp.encode(gf8.base.random(rng, Bp.k_q))
        e = np.zeros(14, dtype=np.int64)
        j = int(rng.integers(7))
        while not e[2 * j : 2 * j + 2].any():
            e[2 * j : 2 * j + 2] = gf8.base.random(rng, 2)
        assert np.array_equal(gss.gss_decode(rs7_5, W, (c + e) % 2, perm), c)


def test_decode_shortened_code(rs7_5):
    u = (1, 2, 3, 1, 2, 3, 1)
    S = gss.s_u(rs7_5.code(), u, rs7_5.tower)
    rng = make_rng(4)
    for _ in range(50):
        c = S.encode(rng.integers(0, 2, S.k))
        e = np.zeros(7, dtype=np.int64)
        e[int(rng.integers(7))] = 1
        assert np.array_equal(gss.s_u_decode(rs7_5, u, (c + e) % 2), c)


def test_decode_beyond_t_is_flagged(gf8, rs7_5):
    rng = make_rng(11)
    W = gss.SubspaceFamily.random(gf8, 7, 2, rng)
    B = gss.gss_w(rs7_5.code(), W)
    kinds = set()
    for _ in range(300):
        c = B.encode(gf8.base.random(rng, B.k_q))
        e = np.zeros(14, dtype=np.int64)
        for j in rng.choice(7, size=2, replace=False):
            while not e[2 * j : 2 * j + 2].any():
                e[2 * j : 2 * j + 2] = gf8.base.random(rng, 2)
        y = (c + e) % 2
        try:
            out = gss.gss_decode(rs7_5, W, y)
        except gss.NotInSubspace:
            kinds.add("subspace")
            continue
        except DecodingFailure:
            kinds.add("failure")
            continue
        assert not np.array_equal(out, c) and B.contains(out)
        kinds.add("other")
    assert "subspace" in kinds


def test_decode_16_instance():
    T = FieldTower(2, 1, 4)
    spec = GrsSpec.extended(T, 13)
    W = gss.SubspaceFamily.random(T, 16, 3, make_rng(0))
    B = gss.gss_w(spec.code(), W)
    rng = make_rng(1)
    for _ in range(100):
        c = B.encode(T.base.random(rng, B.k_q))
        e = np.zeros(48, dtype=np.int64)
        j = int(rng.integers(16))
        while not e[3 * j : 3 * j + 3].any():
            e[3 * j : 3 * j + 3] = T.base.random(rng, 3)
        assert np.array_equal(gss.gss_decode(spec, W, (c + e) % 2), c)
