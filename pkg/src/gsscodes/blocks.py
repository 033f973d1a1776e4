"""Additive block codes over E = GF(q)^r, q-ary images and monomial isometries.

Block words are flat length ``n * r`` vectors over GF(q); block ``i`` occupies
coordinates ``i*r .. i*r + r - 1``.  Isometries act on the right of row
vectors: block ``i`` is multiplied by ``mats[i]``, then blocks are reordered so
that output block ``j`` is input block ``perm[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import codes, linalg
from .codes import LinearCode
from .fields import FieldTower, FiniteField


class BlockCode:
    """GF(q)-linear code of ``n`` blocks of ``r`` symbols each."""

    def __init__(self, field: FiniteField, r: int, n: int, G, d: int | None = None):
        self.field = field
        self.r = r
        self.n = n
        self.linear = G if isinstance(G, LinearCode) else LinearCode(field, np.asarray(G, dtype=np.int64).reshape(-1, n * r), n=n * r)
        if self.linear.n != n * r:
            raise ValueError("generator length does not match n * r")
        self._d = d

    @property
    def G(self) -> np.ndarray:
        return self.linear.G

    @property
    def k_q(self) -> int:
        """Dimension over GF(q)."""
        return self.linear.k

    @property
    def pseudo_dimension(self) -> Fraction:
        return Fraction(self.k_q, self.r)

    def __repr__(self):
        d = "?" if self._d is None else self._d
        return f"BlockCode[{self.n}; {_frac(self.pseudo_dimension)}; {d}] over GF({self.field.order})^{self.r}"

    def __eq__(self, other):
        if not isinstance(other, BlockCode):
            return NotImplemented
        return self.r == other.r and self.n == other.n and self.linear == other.linear

    __hash__ = None

    def contains(self, word) -> bool:
        return self.linear.contains(word)

    def encode(self, msg) -> np.ndarray:
        return self.linear.encode(msg)

    def dual(self) -> BlockCode:
        """Dual as a length ``n*r`` code, with the same block structure."""
        return BlockCode(self.field, self.r, self.n, self.linear.dual())

    def permute_blocks(self, perm) -> BlockCode:
        cols = block_columns(perm, self.r)
        return BlockCode(self.field, self.r, self.n, self.G[:, cols])

    @property
    def d(self) -> int | None:
        if self._d is None:
            self._d = block_min_distance(self)
        return self._d


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{float(x):g}"


def block_columns(perm, r: int) -> np.ndarray:
    perm = np.asarray(perm, dtype=np.int64)
    return (perm[:, None] * r + np.arange(r)).ravel()


def block_weight(x, r: int) -> int:
    return int(codes.block_weights(np.asarray(x)[None, :], r)[0])


def block_min_distance(C: BlockCode, budget: int = codes.ENUMERATION_BUDGET, method: str = "auto", **kw) -> int | None:
    return codes.min_weight(C.field, C.G, C.n, C.r, budget=budget, method=method, **kw)


def word_image(c, tower: FieldTower) -> np.ndarray:
    """Phi_B: GF(q^m)^n -> GF(q)^(nm)."""
    return tower.phi(np.asarray(c, dtype=np.int64)).reshape(-1)


def word_preimage(x, tower: FieldTower) -> np.ndarray:
    return np.asarray(tower.phi_inv(np.asarray(x, dtype=np.int64).reshape(-1, tower.m)), dtype=np.int64)


def image_generator(G, tower: FieldTower) -> np.ndarray:
    """Replace each entry beta of ``G`` by its m x m multiplication matrix."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    m = tower.m
    M = tower.mult_matrix(G)  # (k, n, m, m)
    return M.transpose(0, 2, 1, 3).reshape(k * m, n * m)


def q_ary_image(C: LinearCode, tower: FieldTower) -> BlockCode:
    if C.field is not tower.top:
        raise ValueError("code is not defined over the tower's top field")
    if C.k == 0:
        return BlockCode(tower.base, tower.m, C.n, np.zeros((0, C.n * tower.m), dtype=np.int64))
    return BlockCode(tower.base, tower.m, C.n, image_generator(C.G, tower))


@dataclass
class MonomialIsometry:
    """Block permutation composed with one invertible matrix per block."""

    perm: np.ndarray
    mats: np.ndarray  # (n, r, r)
    field: FiniteField

    def __post_init__(self):
        self.perm = np.asarray(self.perm, dtype=np.int64)
        self.mats = np.asarray(self.mats, dtype=np.int64)
        n = len(self.perm)
        if self.mats.ndim != 3 or self.mats.shape[0] != n or self.mats.shape[1] != self.mats.shape[2]:
            raise ValueError("need one square matrix per block")
        if sorted(self.perm.tolist()) != list(range(n)):
            raise ValueError("perm is not a permutation")
        for i, F in enumerate(self.mats):
            if linalg.rank(F, self.field) != F.shape[0]:
                raise ValueError(f"block matrix {i} is singular")

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def r(self) -> int:
        return self.mats.shape[1]

    @classmethod
    def identity(cls, field: FiniteField, n: int, r: int) -> MonomialIsometry:
        return cls(np.arange(n), np.broadcast_to(np.eye(r, dtype=np.int64), (n, r, r)).copy(), field)

    @classmethod
    def random(cls, field: FiniteField, n: int, r: int, rng: np.random.Generator, permute: bool = True) -> MonomialIsometry:
        mats = np.stack([random_invertible(field, r, rng) for _ in range(n)])
        perm = rng.permutation(n) if permute else np.arange(n)
        return cls(perm, mats, field)

    def apply_word(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64).reshape(self.n, self.r)
        y = np.stack([linalg.matmul(x[i][None, :], self.mats[i], self.field)[0] for i in range(self.n)])
        return y[self.perm].reshape(-1)

    def matrix(self) -> np.ndarray:
        """The nr x nr matrix P with apply_word(x) == x @ P."""
        D = linalg.block_diag(self.mats)
        return D[:, block_columns(self.perm, self.r)]

    def inverse(self) -> MonomialIsometry:
        # output block j holds input block perm[j] scaled by mats[perm[j]]
        mats = np.stack([linalg.inverse(self.mats[p], self.field) for p in self.perm])
        return MonomialIsometry(np.argsort(self.perm), mats, self.field)

    def compose(self, other: MonomialIsometry) -> MonomialIsometry:
        """``self`` after ``other``."""
        P = linalg.matmul(other.matrix(), self.matrix(), self.field)
        return from_matrix(P, self.n, self.r, self.field)


def from_matrix(P, n: int, r: int, field: FiniteField) -> MonomialIsometry:
    """Recover (perm, mats) from a monomial block matrix."""
    P = np.asarray(P, dtype=np.int64)
    perm = np.zeros(n, dtype=np.int64)
    mats = np.zeros((n, r, r), dtype=np.int64)
    for j in range(n):
        col = P[:, j * r : (j + 1) * r]
        rows = [i for i in range(n) if col[i * r : (i + 1) * r].any()]
        if len(rows) != 1:
            raise ValueError("matrix is not block monomial")
        i = rows[0]
        perm[j] = i
        mats[i] = col[i * r : (i + 1) * r]
    return MonomialIsometry(perm, mats, field)


def random_invertible(field: FiniteField, r: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        A = field.random(rng, (r, r))
        if linalg.rank(A, field) == r:
            return A


def apply_isometry(C: BlockCode, mon: MonomialIsometry) -> BlockCode:
    if mon.n != C.n or mon.r != C.r:
        raise ValueError("isometry size does not match the code")
    if C.k_q == 0:
        return C
    return BlockCode(C.field, C.r, C.n, linalg.matmul(C.G, mon.matrix(), C.field))


def adjoint_isometry(mon: MonomialIsometry) -> MonomialIsometry:
    """f* with f*_i = (f_i^-1)^T; only for diagonal isometries."""
    if not np.array_equal(mon.perm, np.arange(mon.n)):
        raise ValueError("adjoint is defined here for diagonal isometries only")
    mats = np.stack([linalg.inverse(F, mon.field).T for F in mon.mats])
    return MonomialIsometry(mon.perm.copy(), mats, mon.field)
