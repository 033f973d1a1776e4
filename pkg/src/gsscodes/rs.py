"""Generalized Reed-Solomon codes over GF(q^m) and their alternant subcodes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import LinearCode, subfield_subcode
from .fields import FieldTower


class DecodingFailure(RuntimeError):
    pass


_DUAL_CACHE: dict = {}


@dataclass
class GrsSpec:
    """GRS code: codeword ``(v_i f(a_i))`` for ``deg f < k``."""

    tower: FieldTower
    support: np.ndarray
    multipliers: np.ndarray
    k: int

    def __post_init__(self):
        self.support = np.asarray(self.support, dtype=np.int64)
        self.multipliers = np.asarray(self.multipliers, dtype=np.int64)
        n = len(self.support)
        if len(set(self.support.tolist())) != n:
            raise ValueError("support entries must be pairwise distinct")
        if len(self.multipliers) != n:
            raise ValueError("need one multiplier per position")
        if np.any(self.multipliers == 0):
            raise ValueError("multipliers must be nonzero")
        if not 0 <= self.k <= n:
            raise ValueError("need 0 <= k <= n")
        order = self.tower.top.order
        if np.any((self.support < 0) | (self.support >= order)) or np.any(self.multipliers >= order):
            raise ValueError("support/multipliers outside GF(q^m)")

    @property
    def n(self) -> int:
        return len(self.support)

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    @classmethod
    def reed_solomon(cls, tower: FieldTower, n: int, k: int) -> GrsSpec:
        """Support (1, g, g^2, ..., g^(n-1)) for the field's primitive element g."""
        F = tower.top
        if n > F.order - 1:
            raise ValueError(f"n={n} exceeds q^m - 1; use extended()")
        return cls(tower, F.exp(np.arange(n)), np.ones(n, dtype=np.int64), k)

    @classmethod
    def extended(cls, tower: FieldTower, k: int) -> GrsSpec:
        """Support (0, 1, g, ..., g^(q^m-2)): every field element once."""
        F = tower.top
        support = np.concatenate([[0], F.exp(np.arange(F.order - 1))])
        return cls(tower, support, np.ones(F.order, dtype=np.int64), k)

    def with_multipliers(self, v) -> GrsSpec:
        return GrsSpec(self.tower, self.support, v, self.k)

    def generator(self) -> np.ndarray:
        F = self.tower.top
        return F.mul(_vandermonde(F, self.support, self.k), self.multipliers[None, :])

    def dual_multipliers(self) -> np.ndarray:
        """Multipliers of the dual GRS code (same support, dimension n - k)."""
        key = (self.support.tobytes(), self.multipliers.tobytes())
        cached = _DUAL_CACHE.get(key)
        if cached is not None and cached[0] is self.tower:
            return cached[1]
        F = self.tower.top
        a = self.support
        out = np.empty(self.n, dtype=np.int64)
        for i in range(self.n):
            diffs = F.sub(a[i], np.delete(a, i))
            prod = 1
            for x in diffs:
                prod = F.mul(prod, int(x))
            out[i] = F.inv(F.mul(prod, int(self.multipliers[i])))
        if len(_DUAL_CACHE) > 64:
            _DUAL_CACHE.clear()
        _DUAL_CACHE[key] = (self.tower, out)
        return out

    def parity_check(self) -> np.ndarray:
        F = self.tower.top
        return F.mul(_vandermonde(F, self.support, self.n - self.k), self.dual_multipliers()[None, :])

    def code(self) -> LinearCode:
        return LinearCode(self.tower.top, self.generator(), n=self.n)

    def to_dict(self) -> dict:
        return {"support": self.support.tolist(), "multipliers": self.multipliers.tolist(), "k": self.k}

    @classmethod
    def from_dict(cls, tower: FieldTower, d: dict) -> GrsSpec:
        return cls(tower, d["support"], d["multipliers"], d["k"])


def _vandermonde(F, a, rows: int) -> np.ndarray:
    out = np.ones((rows, len(a)), dtype=np.int64)
    for i in range(1, rows):
        out[i] = F.mul(out[i - 1], a)
    return out


def rs_generator(spec: GrsSpec) -> LinearCode:
    return spec.code()


def encode(spec: GrsSpec, message) -> np.ndarray:
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (spec.k,):
        raise ValueError(f"message must have {spec.k} symbols")
    return linalg.matmul(message[None, :], spec.generator(), spec.tower.top)[0]


def syndrome(spec: GrsSpec, word) -> np.ndarray:
    F = spec.tower.top
    H = spec.parity_check()
    return linalg.matmul(H, np.asarray(word, dtype=np.int64)[:, None], F)[:, 0]


def _berlekamp_massey(F, s: list[int]) -> tuple[list[int], int]:
    """Shortest LFSR (connection polynomial C, length L) generating ``s``."""
    C = [1]
    B = [1]
    L = 0
    shift = 1
    b = 1
    for i in range(len(s)):
        delta = s[i]
        for j in range(1, L + 1):
            if j < len(C) and C[j]:
                delta = F.add(delta, F.mul(C[j], s[i - j]))
        if delta == 0:
            shift += 1
            continue
        coef = F.div(delta, b)
        T = list(C)
        need = len(B) + shift
        if len(C) < need:
            C = C + [0] * (need - len(C))
        for j, bj in enumerate(B):
            if bj:
                C[j + shift] = F.sub(C[j + shift], F.mul(coef, bj))
        if 2 * L <= i:
            L = i + 1 - L
            B = T
            b = delta
            shift = 1
        else:
            shift += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L


def _poly_eval(F, coeffs: list[int], x):
    acc = np.zeros_like(np.asarray(x, dtype=np.int64))
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def decode(spec: GrsSpec, word) -> tuple[np.ndarray, np.ndarray]:
    """Bounded-distance decoding up to ``t = (d-1)//2`` errors.

    Syndromes against the dual GRS code, Berlekamp-Massey for the locator,
    root search over the support and Forney magnitudes.  A support point equal
    to zero is located through the LFSR length exceeding the locator degree.
    Returns ``(codeword, error)``; raises :class:`DecodingFailure` otherwise.
    """
    F = spec.tower.top
    y = np.asarray(word, dtype=np.int64)
    if y.shape != (spec.n,):
        raise ValueError(f"word must have length {spec.n}")
    t = spec.t
    s = syndrome(spec, y)
    if not s.any():
        return y.copy(), np.zeros_like(y)
    if t == 0:
        raise DecodingFailure("nonzero syndrome and no correction capability")
    s = [int(v) for v in s[: 2 * t]]
    lam, L = _berlekamp_massey(F, s)
    if L > t:
        raise DecodingFailure("more than t errors")
    a = spec.support
    nonzero = np.flatnonzero(a)
    inv_a = F.inv(a[nonzero])
    vals = _poly_eval(F, lam, inv_a)
    positions = nonzero[vals == 0]
    deg = len(lam) - 1
    zero_pos = np.flatnonzero(a == 0)
    zero_err = L - deg == 1 and zero_pos.size == 1
    if len(positions) != deg or (L != deg and not zero_err):
        raise DecodingFailure("error locator does not split over the support")
    # Omega = S * Lambda mod x^(2t)
    omega = [0] * (2 * t)
    for i, si in enumerate(s):
        if si:
            for j, lj in enumerate(lam):
                if i + j < 2 * t and lj:
                    omega[i + j] = F.add(omega[i + j], F.mul(si, lj))
    dlam = [F.mul(lam[j], j % F.p) for j in range(1, len(lam))]
    vdual = spec.dual_multipliers()
    e = np.zeros(spec.n, dtype=np.int64)
    for pos in positions:
        X = int(a[pos])
        Xi = F.inv(X)
        num = int(_poly_eval(F, omega, Xi))
        den = int(_poly_eval(F, dlam, Xi)) if dlam else 0
        if den == 0:
            raise DecodingFailure("zero derivative at a locator root")
        Y = F.neg(F.mul(X, F.div(num, den)))
        e[pos] = F.div(Y, int(vdual[pos]))
    if zero_err:
        # remaining first syndrome belongs to the error at the zero support point
        zp = int(zero_pos[0])
        rest = s[0]
        for pos in positions:
            rest = F.sub(rest, F.mul(int(e[pos]), int(vdual[pos])))
        if rest == 0:
            raise DecodingFailure("inconsistent syndrome")
        e[zp] = F.div(rest, int(vdual[zp]))
    c = F.sub(y, e)
    if syndrome(spec, c).any() or np.count_nonzero(e) > t:
        raise DecodingFailure("correction is not within distance t of a codeword")
    return c, e


def alternant_code(spec: GrsSpec) -> LinearCode:
    """Subfield subcode of the GRS code over the tower's base field."""
    return subfield_subcode(spec.code(), spec.tower)
