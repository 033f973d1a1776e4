"""McEliece-style parameter calculator and a small keygen/encrypt/decrypt
demonstrator built on generalized subspace subcodes of GRS codes.

Not a secure KEM: no padding, no CCA transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg, rs
from .fields import FieldTower, FiniteField
from .gss import SubspaceFamily, gss_decode, gss_w
from .rng import make_rng

SECURITY_BITS = 128
MAX_KEYGEN_ATTEMPTS = 1000


# -- parameter calculator ------------------------------------------------------


def _check_wf_args(n: int, k: int, t: int) -> None:
    if not (0 < k and 0 <= t and k <= n - t):
        raise ValueError(f"need 0 < k <= n - t (got n={n}, k={k}, t={t})")


def workfactor(n: int, k: int, t: int) -> Fraction:
    """C(n, k) / C(n - t, k): inverse chance that a random information set avoids t errors."""
    _check_wf_args(n, k, t)
    return Fraction(math.comb(n, k), math.comb(n - t, k))


def workfactor_log2(n: int, k: int, t: int) -> float:
    wf = workfactor(n, k, t)
    return math.log2(wf.numerator) - math.log2(wf.denominator)


def workfactor_floor_log2(n: int, k: int, t: int) -> int:
    """Exact floor(log2 wf) using integer comparisons only."""
    wf = workfactor(n, k, t)
    A, B = wf.numerator, wf.denominator
    e = A.bit_length() - B.bit_length()
    # 2^e B <= A < 2^(e+1) B after at most one correction step
    if e >= 0:
        if (B << e) > A:
            e -= 1
    elif B > (A << -e):
        e -= 1
    return e


def keysize_systematic(k_q: int, n_q: int, bits_per_symbol: int) -> int:
    """Bits of the non-identity part of a systematic k x n generator."""
    if not 0 <= k_q <= n_q:
        raise ValueError("need 0 <= k_q <= n_q")
    return k_q * (n_q - k_q) * bits_per_symbol


def bits_to_kb(bits: int) -> float:
    """Kilobytes of 1024 bytes."""
    return bits / 8 / 1024


@dataclass(frozen=True)
class CryptoParams:
    """Parameters of a GSS code of a GRS code [n, k, d] over GF(q^m) with block size r."""

    n: int
    k: int
    d: int
    q: int
    m: int
    r: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError("need 0 < k < n")
        if not 1 <= self.r <= self.m:
            raise ValueError("need 1 <= r <= m")

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    @property
    def k_q(self) -> int:
        """Guaranteed GF(q)-dimension k m - n (m - r)."""
        return self.k * self.m - self.n * (self.m - self.r)

    @property
    def n_q(self) -> int:
        return self.n * self.r

    @property
    def pseudo_dimension(self) -> Fraction:
        return Fraction(self.k_q, self.r)

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.q)) if self.q & (self.q - 1) == 0 else math.ceil(math.log2(self.q))

    def block_dimension(self) -> int:
        """Pseudo-dimension rounded up, used as k in the block workfactor."""
        return math.ceil(self.pseudo_dimension)

    def key_bits(self) -> int:
        return keysize_systematic(self.k_q, self.n_q, self.bits_per_symbol)

    def report(self) -> dict:
        kb = self.block_dimension()
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "m": self.m,
            "r": self.r,
            "t": self.t,
            "k_q": self.k_q,
            "n_q": self.n_q,
            "pseudo_dimension": str(self.pseudo_dimension),
            "workfactor_log2": workfactor_log2(self.n, kb, self.t),
            "workfactor_floor_log2": workfactor_floor_log2(self.n, kb, self.t),
            "meets_security": workfactor_floor_log2(self.n, kb, self.t) >= SECURITY_BITS,
            "key_bits": self.key_bits(),
            "key_kb": round(bits_to_kb(self.key_bits()), 1),
        }


# -- demonstrator ----------------------------------------------------------------


@dataclass
class PublicKey:
    G: np.ndarray  # systematic k_q x n r generator over GF(q)
    n: int
    r: int
    q: int
    t: int
    modulus_q: tuple[int, ...] | None = None

    @property
    def k_q(self) -> int:
        return self.G.shape[0]

    def field(self) -> FiniteField:
        if self.modulus_q is None:
            return FiniteField.prime(self.q)
        p = _prime_of(self.q)
        return FiniteField(FiniteField.prime(p), list(self.modulus_q))

    def to_dict(self) -> dict:
        return {
            "G": self.G.tolist(),
            "n": self.n,
            "r": self.r,
            "q": self.q,
            "t": self.t,
            "modulus_q": None if self.modulus_q is None else list(self.modulus_q),
        }

    @classmethod
    def from_dict(cls, d: dict) -> PublicKey:
        G = np.array(d["G"], dtype=np.int64).reshape(-1, d["n"] * d["r"])
        mod = d.get("modulus_q")
        return cls(G, d["n"], d["r"], d["q"], d["t"], None if mod is None else tuple(mod))


def _prime_of(q: int) -> int:
    p = 2
    while q % p:
        p += 1
    return p


@dataclass
class SecretKey:
    spec: rs.GrsSpec
    family: SubspaceFamily
    perm: np.ndarray

    def to_dict(self) -> dict:
        return {
            "tower": self.spec.tower.to_text(),
            "grs": self.spec.to_dict(),
            "W": self.family.to_text(),
            "perm": [int(x) for x in self.perm],
        }

    @classmethod
    def from_dict(cls, d: dict) -> SecretKey:
        tower = FieldTower.from_text(d["tower"])
        return cls(rs.GrsSpec.from_dict(tower, d["grs"]), SubspaceFamily.from_text(tower, d["W"]), np.array(d["perm"], dtype=np.int64))


def keygen(spec: rs.GrsSpec, r: int, seed: int = 0) -> tuple[PublicKey, SecretKey]:
    """Random W and block permutation; the public key is the systematic generator.

    Draws are repeated from the same seeded stream until the permuted code has
    an identity in its leading columns, so no extra column permutation leaks.
    """
    tower = spec.tower
    if not 1 <= r <= tower.m:
        raise ValueError(f"need 1 <= r <= m = {tower.m}")
    rng = make_rng(seed)
    parent = spec.code()
    for _ in range(MAX_KEYGEN_ATTEMPTS):
        W = SubspaceFamily.random(tower, spec.n, r, rng)
        perm = rng.permutation(spec.n)
        code = gss_w(parent, W).permute_blocks(perm)
        G = code.G
        k = G.shape[0]
        if k == 0 or not np.array_equal(G[:, :k], np.eye(k, dtype=np.int64)):
            continue
        mod = None if tower.e == 1 else tuple(int(c) for c in tower.modulus_q)
        return PublicKey(G.copy(), spec.n, r, tower.q, spec.t, mod), SecretKey(spec, W, perm)
    raise RuntimeError("no systematic key found; parameters are degenerate")


def random_block_error(F: FiniteField, n: int, r: int, weight: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly ``weight`` nonzero blocks of size r."""
    if not 0 <= weight <= n:
        raise ValueError("error weight out of range")
    e = np.zeros((n, r), dtype=np.int64)
    for j in rng.choice(n, size=weight, replace=False):
        while not e[j].any():
            e[j] = F.random(rng, r)
    return e.reshape(-1)


def encrypt(pub: PublicKey, message, seed: int = 0, t: int | None = None) -> np.ndarray:
    F = pub.field()
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (pub.k_q,):
        raise ValueError(f"message must have {pub.k_q} symbols")
    t = pub.t if t is None else t
    c = linalg.matmul(message[None, :], pub.G, F)[0]
    return F.add(c, random_block_error(F, pub.n, pub.r, t, make_rng(seed)))


def decrypt(sec: SecretKey, ciphertext, k_q: int) -> np.ndarray:
    """Raises :class:`~gsscodes.rs.DecodingFailure` when decoding fails."""
    x = gss_decode(sec.spec, sec.family, ciphertext, sec.perm)
    return x[:k_q]


def keypair_to_dict(pub: PublicKey, sec: SecretKey) -> dict:
    return {"public": pub.to_dict(), "secret": sec.to_dict()}


def keypair_from_dict(d: dict) -> tuple[PublicKey, SecretKey]:
    return PublicKey.from_dict(d["public"]), SecretKey.from_dict(d["secret"])
