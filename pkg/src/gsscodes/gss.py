"""Shortened q-ary images, generalized subfield subcodes and generalized
subspace subcodes of codes over GF(q^m), with decoding through the parent."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg, rs
from .blocks import BlockCode, MonomialIsometry, block_columns, image_generator, q_ary_image
from .codes import LinearCode, puncture, shorten
from .fields import FieldTower
from .rng import make_rng  # noqa: F401  (re-export)


class NotInSubspace(rs.DecodingFailure):
    """The parent decoder returned a codeword outside the subspace family."""


# -- position tuples ---------------------------------------------------------


def position_sets(u: Sequence[int], m: int) -> tuple[list[int], list[int]]:
    """0-based ``(I_u, J_u)`` for a tuple ``u`` with entries in 1..m."""
    u = [int(x) for x in u]
    if any(not 1 <= x <= m for x in u):
        raise ValueError(f"position tuple entries must lie in 1..{m}")
    I = [j * m + (x - 1) for j, x in enumerate(u)]
    Iset = set(I)
    J = [i for i in range(len(u) * m) if i not in Iset]
    return I, J


def s_u(C: LinearCode, u: Sequence[int], tower: FieldTower) -> LinearCode:
    """Shorten the q-ary image on J_u."""
    _, J = position_sets(u, tower.m)
    _check_length(C, u)
    return shorten(q_ary_image(C, tower).linear, J)


def p_u(C: LinearCode, u: Sequence[int], tower: FieldTower) -> LinearCode:
    """Puncture the q-ary image on J_u."""
    _, J = position_sets(u, tower.m)
    _check_length(C, u)
    return puncture(q_ary_image(C, tower).linear, J)


def _check_length(C: LinearCode, u) -> None:
    if len(u) != C.n:
        raise ValueError(f"position tuple has length {len(u)}, code has length {C.n}")


def _image_parity_check(C: LinearCode, tower: FieldTower) -> np.ndarray:
    if C.field is not tower.top:
        raise ValueError("code is not defined over the tower's top field")
    M = image_generator(C.G, tower)
    return linalg.right_kernel(M, tower.base, cols=C.n * tower.m)


def _code_from_parity(H: np.ndarray, tower: FieldTower, n: int, perm=None) -> LinearCode:
    H = linalg.row_basis(H, tower.base) if H.shape[0] else H
    if perm is not None:
        H = H[:, np.asarray(perm)]
    return LinearCode.from_parity_check(tower.base, H, n=n)


def gss_algorithm1(C: LinearCode, u: Sequence[int], tower: FieldTower) -> LinearCode:
    """Generator of S_u(C) through the dual of the image."""
    _check_length(C, u)
    I, _ = position_sets(u, tower.m)
    H = _image_parity_check(C, tower)
    return _code_from_parity(H[:, I], tower, C.n)


def _check_isometry(C: LinearCode, mon: MonomialIsometry, tower: FieldTower) -> None:
    if mon.n != C.n or mon.r != tower.m:
        raise ValueError("isometry must have n blocks of size m")


def gss_algorithm2(C: LinearCode, mon: MonomialIsometry, tower: FieldTower) -> LinearCode:
    """GSS relative to ``mon`` with u = (1, ..., 1).

    Uses the parity check of the image multiplied by the adjoint blocks
    ``(f_i^-1)^T``; only the first column of each block is needed.
    """
    _check_isometry(C, mon, tower)
    H = _image_parity_check(C, tower)
    m = tower.m
    cols = []
    for i in range(C.n):
        f_star = linalg.inverse(mon.mats[i], tower.base).T
        cols.append(linalg.matmul(H[:, i * m : (i + 1) * m], f_star[:, :1], tower.base))
    Hp = np.hstack(cols) if cols else np.zeros((H.shape[0], 0), dtype=np.int64)
    return _code_from_parity(Hp, tower, C.n, mon.perm)


def gss_algorithm3(C: LinearCode, perm, y, tower: FieldTower) -> LinearCode:
    """GSS relative to a permutation and nonzero ``y_i`` in GF(q^m)."""
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (C.n,):
        raise ValueError("need one y_i per position")
    if np.any(y == 0):
        raise ValueError("every y_i must be nonzero")
    perm = np.arange(C.n) if perm is None else np.asarray(perm, dtype=np.int64)
    H = _image_parity_check(C, tower)
    m = tower.m
    Y = tower.phi(y)  # (n, m)
    H3 = H.reshape(H.shape[0], C.n, m)
    Hp = _contract(H3, Y[:, None, :], tower)[:, :, 0]
    return _code_from_parity(Hp, tower, C.n, perm)


def _contract(H3: np.ndarray, bases: np.ndarray, tower: FieldTower) -> np.ndarray:
    """``out[a, i, j] = sum_t H3[a, i, t] * bases[i, j, t]`` over GF(q)."""
    F = tower.base
    if F.order == 2:
        return np.einsum("ait,ijt->aij", H3, bases) & 1
    if F.is_prime_field:
        return np.einsum("ait,ijt->aij", H3, bases) % F.p
    out = np.zeros((H3.shape[0], bases.shape[0], bases.shape[1]), dtype=np.int64)
    for t in range(H3.shape[2]):
        out = F.add(out, F.mul(H3[:, :, t][:, :, None], bases[None, :, :, t]))
    return out


# -- subspace families -------------------------------------------------------


@dataclass
class SubspaceFamily:
    """W = V_1 x ... x V_n; ``bases[i]`` is an r x m matrix spanning V_i.

    Rows are coordinates with respect to the tower's basis.
    """

    tower: FieldTower
    bases: np.ndarray
    _proj: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.bases = np.asarray(self.bases, dtype=np.int64)
        if self.bases.ndim != 3 or self.bases.shape[2] != self.tower.m:
            raise ValueError("bases must have shape (n, r, m)")
        for i, V in enumerate(self.bases):
            if linalg.rank(V, self.tower.base) != V.shape[0]:
                raise ValueError(f"basis of V_{i + 1} is rank deficient")

    @property
    def n(self) -> int:
        return self.bases.shape[0]

    @property
    def r(self) -> int:
        return self.bases.shape[1]

    @classmethod
    def uniform(cls, tower: FieldTower, V, n: int) -> SubspaceFamily:
        V = np.asarray(V, dtype=np.int64).reshape(-1, tower.m)
        return cls(tower, np.broadcast_to(V, (n,) + V.shape).copy())

    @classmethod
    def from_elements(cls, tower: FieldTower, elems) -> SubspaceFamily:
        """``elems[i]`` lists GF(q^m) elements spanning V_i."""
        return cls(tower, np.stack([tower.phi(np.asarray(e, dtype=np.int64)) for e in elems]))

    @classmethod
    def random(cls, tower: FieldTower, n: int, r: int, rng: np.random.Generator) -> SubspaceFamily:
        """Draw each r x m basis uniformly until it has full rank."""
        F = tower.base
        out = []
        for _ in range(n):
            while True:
                V = F.random(rng, (r, tower.m))
                if linalg.rank(V, F) == r:
                    out.append(V)
                    break
        return cls(tower, np.stack(out))

    def elements(self) -> np.ndarray:
        """(n, r) array of the basis elements v_ij of each V_i in GF(q^m)."""
        return np.asarray(self.tower.phi_inv(self.bases), dtype=np.int64).reshape(self.n, self.r)

    def embed(self, x) -> np.ndarray:
        """Block word over GF(q) -> word of GF(q^m)^n with c_i in V_i."""
        x = np.asarray(x, dtype=np.int64).reshape(self.n, self.r)
        coords = np.stack([linalg.matmul(x[i][None, :], self.bases[i], self.tower.base)[0] for i in range(self.n)])
        return np.asarray(self.tower.phi_inv(coords), dtype=np.int64).reshape(self.n)

    def _projectors(self):
        if self._proj is None:
            self._proj = [linalg.inverse(self.tower.complete_basis(V), self.tower.base) for V in self.bases]
        return self._proj

    def project(self, c) -> np.ndarray | None:
        """Inverse of :meth:`embed`; ``None`` if some c_i is outside V_i."""
        coords = self.tower.phi(np.asarray(c, dtype=np.int64))
        out = np.zeros((self.n, self.r), dtype=np.int64)
        for i, P in enumerate(self._projectors()):
            y = linalg.matmul(coords[i][None, :], P, self.tower.base)[0]
            if y[self.r :].any():
                return None
            out[i] = y[: self.r]
        return out.reshape(-1)

    def to_text(self) -> str:
        parts = [f"W {self.r}"]
        parts += [linalg.format_matrix(V) for V in self.bases]
        return "\n\n".join(parts) + "\n"

    @classmethod
    def from_text(cls, tower: FieldTower, text: str) -> SubspaceFamily:
        lines = text.strip().splitlines()
        header = lines[0].split()
        if len(header) != 2 or header[0] != "W":
            raise ValueError("subspace family file must start with 'W r'")
        r = int(header[1])
        mats = [linalg.parse_matrix(chunk, tower.q) for chunk in "\n".join(lines[1:]).split("\n\n") if chunk.strip()]
        if any(M.shape != (r, tower.m) for M in mats):
            raise ValueError(f"every basis must be {r} x {tower.m}")
        return cls(tower, np.stack(mats))


def family_from_positions(tower: FieldTower, u: Sequence[int]) -> SubspaceFamily:
    """V_i spanned by the basis element b_{u_i}: the family behind S_u."""
    return SubspaceFamily(tower, np.eye(tower.m, dtype=np.int64)[[int(x) - 1 for x in u]][:, None, :])


def family_from_isometry(mon: MonomialIsometry, tower: FieldTower) -> SubspaceFamily:
    """V_i spanned by y_i, the first row of f_i^-1 (before the permutation)."""
    rows = [linalg.inverse(F, tower.base)[0] for F in mon.mats]
    return SubspaceFamily(tower, np.stack(rows)[:, None, :])


def y_from_isometry(mon: MonomialIsometry, tower: FieldTower) -> np.ndarray:
    return family_from_isometry(mon, tower).elements()[:, 0]


# -- subspace subcodes ---------------------------------------------------------


def subspace_subcode(C: LinearCode, V, tower: FieldTower) -> BlockCode:
    """C intersected with V^n, as a block code with block size dim V.

    Re-expresses the image in a basis whose first r vectors span V and
    shortens the last m - r coordinates of every block.
    """
    V = np.asarray(V, dtype=np.int64).reshape(-1, tower.m)
    r = V.shape[0]
    P = tower.complete_basis(V)
    Pinv = linalg.inverse(P, tower.base)
    m = tower.m
    img = q_ary_image(C, tower)
    if img.k_q == 0:
        return BlockCode(tower.base, r, C.n, np.zeros((0, C.n * r), dtype=np.int64))
    G = img.G.reshape(img.k_q, C.n, m)
    G2 = _contract(G, np.broadcast_to(Pinv.T, (C.n, m, m)), tower).reshape(img.k_q, C.n * m)
    J = [i * m + j for i in range(C.n) for j in range(r, m)]
    short = shorten(LinearCode(tower.base, G2, n=C.n * m), J) if J else LinearCode(tower.base, G2, n=C.n * m)
    return BlockCode(tower.base, r, C.n, short)


def gss_w(C: LinearCode, W: SubspaceFamily, tower: FieldTower | None = None) -> BlockCode:
    """C intersected with W, as a block code of block size r."""
    tower = tower or W.tower
    if W.n != C.n:
        raise ValueError("family size does not match the code length")
    H = _image_parity_check(C, tower)
    H3 = H.reshape(H.shape[0], C.n, tower.m)
    Hp = _contract(H3, W.bases, tower).reshape(H.shape[0], C.n * W.r)
    Hp = linalg.row_basis(Hp, tower.base) if Hp.shape[0] else Hp
    G = linalg.right_kernel(Hp, tower.base, cols=C.n * W.r)
    return BlockCode(tower.base, W.r, C.n, G)


def pseudo_dimension_bound(n: int, k: int, m: int, r: int):
    """Lower bound (k m - n (m - r)) / r on the pseudo-dimension."""
    from fractions import Fraction

    return Fraction(k * m - n * (m - r), r)


# -- decoding ------------------------------------------------------------------


def gss_decode(spec: rs.GrsSpec, W: SubspaceFamily, word, perm=None) -> np.ndarray:
    """Decode a noisy block word of GSS_W (optionally block-permuted) through
    the parent GRS decoder; corrects up to the parent's t block errors."""
    r = W.r
    x = np.asarray(word, dtype=np.int64)
    if x.shape != (W.n * r,):
        raise ValueError(f"word must have length {W.n * r}")
    if perm is not None:
        perm = np.asarray(perm, dtype=np.int64)
        x = x[block_columns(np.argsort(perm), r)]
    noisy = W.embed(x)
    c, _ = rs.decode(spec, noisy)
    out = W.project(c)
    if out is None:
        raise NotInSubspace("decoded parent codeword is not in W")
    if perm is not None:
        out = out[block_columns(perm, r)]
    return out


def s_u_decode(spec: rs.GrsSpec, u: Sequence[int], word) -> np.ndarray:
    """Zero-fill the shortened coordinates, map back to GF(q^m)^n, decode."""
    return gss_decode(spec, family_from_positions(spec.tower, u), word)
