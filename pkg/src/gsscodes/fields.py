"""Finite fields and field towers GF(p) <= GF(q) <= GF(q^m).

Elements are plain integers.  An element of an extension of degree ``d`` over
a base field of order ``b`` is stored as ``sum(c_i * b**i)`` where ``c_i`` are
the base-field coefficients of the residue polynomial (little-endian).  For a
tower over GF(p) this is the same as reading the integer's base-p digits as
the coefficient vector, so GF(q) elements embed into GF(q^m) unchanged.

All arithmetic methods accept Python ints or integer numpy arrays.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Sequence

import numpy as np

# Conway polynomials, coefficients little-endian.
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
}

TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """GF(p) or an extension of another :class:`FiniteField`.

    Use :meth:`prime` for GF(p) and the constructor for extensions.
    """

    def __init__(self, base: FiniteField | None, modulus: Sequence[int] | None = None, *, p: int | None = None):
        if base is None:
            if p is None or not is_prime(p):
                raise FieldError(f"characteristic must be prime, got {p}")
            self.base = None
            self.p = p
            self.rel_degree = 1
            self.degree = 1
            self.order = p
            self.modulus = None
        else:
            if modulus is None:
                raise FieldError("an extension field needs a modulus; see default_modulus()")
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) < 2 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree >= 1")
            if any(not 0 <= c < base.order for c in modulus):
                raise FieldError("modulus coefficients outside the base field")
            self.base = base
            self.p = base.p
            self.rel_degree = len(modulus) - 1
            self.degree = base.degree * self.rel_degree
            self.order = base.order ** self.rel_degree
            self.modulus = modulus
            if not base.poly_is_irreducible(modulus):
                raise FieldError(f"modulus {modulus} is reducible over GF({base.order})")
        self._exp = None
        self._log = None
        self.generator = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    @classmethod
    def prime(cls, p: int) -> FiniteField:
        return cls(None, p=p)

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}) over GF({self.base.order}) mod {list(self.modulus)}"

    # -- structure -------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def digits(self, a):
        """Coefficients of ``a`` over the base field, shape ``(..., rel_degree)``."""
        a = np.asarray(a, dtype=np.int64)
        b = self.base.order if self.base is not None else self.order
        powers = b ** np.arange(self.rel_degree, dtype=np.int64)
        return (a[..., None] // powers) % b

    def from_digits(self, c):
        c = np.asarray(c, dtype=np.int64)
        b = self.base.order if self.base is not None else self.order
        powers = b ** np.arange(c.shape[-1], dtype=np.int64)
        return (c * powers).sum(axis=-1)

    # -- slow polynomial arithmetic (table construction, big fields) --------

    def _digits_list(self, a: int) -> list[int]:
        b = self.base.order
        out = []
        for _ in range(self.rel_degree):
            out.append(a % b)
            a //= b
        return out

    def _from_digits_list(self, c) -> int:
        b = self.base.order
        v = 0
        for x in reversed(c):
            v = v * b + int(x)
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B = self.base
        da, db = self._digits_list(a), self._digits_list(b)
        prod = [0] * (2 * self.rel_degree - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        return self._from_digits_list(B.poly_mod(prod, self.modulus))

    def _mul_by_x(self, a: int) -> int:
        B = self.base
        d = self._digits_list(a)
        top = d[-1]
        shifted = [0] + d[:-1]
        if top:
            shifted = [B.sub(s, B.mul(top, c)) for s, c in zip(shifted, self.modulus[:-1])]
        return self._from_digits_list(shifted)

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    def _is_primitive(self, g: int) -> bool:
        n = self.order - 1
        if g == 0:
            return False
        return all(self._slow_pow(g, n // f) != 1 for f in _prime_factors(n)) if n > 1 else g == 1

    def _build_tables(self):
        n = self.order - 1
        exp = np.zeros(max(n, 1), dtype=np.int64)
        if self.base is None:
            g = next(c for c in range(1, self.p) if self._is_primitive(c))
            step = lambda a: a * g % self.p  # noqa: E731
        else:
            if self.rel_degree > 1:
                x = self.base.order
            else:
                # degree-one extension: the class of x is minus the constant term
                x = int(self.base.neg(self.modulus[0]))
            if self._is_primitive(x):
                g = x
                step = self._mul_by_x if self.rel_degree > 1 else (lambda a: self._slow_mul(a, g))
            else:
                g = next(c for c in range(2, self.order) if self._is_primitive(c))
                step = lambda a: self._slow_mul(a, g)  # noqa: E731
        a = 1
        for i in range(n):
            exp[i] = a
            a = step(a)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp[:n]] = np.arange(n)
        if n == 0:
            exp[0] = 1
        self.generator = int(g) if self.order > 2 else 1
        self._exp = exp
        self._log = log

    # -- vectorised arithmetic ---------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return int(a) ^ int(b) if _both_int(a, b) else np.bitwise_xor(a, b)
        if self.base is None:
            return (np.asarray(a) + b) % self.p if not _both_int(a, b) else (a + b) % self.p
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        if self.p == 2:
            return int(a) ^ int(b) if _both_int(a, b) else np.bitwise_xor(a, b)
        if self.base is None:
            return (np.asarray(a) - b) % self.p if not _both_int(a, b) else (a - b) % self.p
        return self._digitwise(a, b, -1)

    def neg(self, a):
        if self.p == 2:
            return a
        return self.sub(0 if _is_int(a) else np.zeros_like(a), a)

    def _digitwise(self, a, b, sign):
        scalar = _both_int(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.degree):
            out += ((a // pw + sign * (b // pw)) % self.p) * pw
            pw *= self.p
        return int(out) if scalar else out

    def mul(self, a, b):
        if self._exp is None:
            if _both_int(a, b):
                return self._slow_mul(int(a), int(b))
            return np.vectorize(self._slow_mul, otypes=[np.int64])(a, b)
        n = self.order - 1
        if _both_int(a, b):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[(self._log[a] + self._log[b]) % n])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[(self._log[a] + self._log[b]) % n]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if _is_int(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            if self._exp is None:
                return self._slow_pow(int(a), self.order - 2)
            n = self.order - 1
            return int(self._exp[(-self._log[a]) % n])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self._exp is None:
            return np.vectorize(lambda x: self._slow_pow(int(x), self.order - 2), otypes=[np.int64])(a)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if self._exp is None:
            if _is_int(a):
                return self._slow_pow(int(a), k % (self.order - 1) if a else k)
            return np.vectorize(lambda x: self._slow_pow(int(x), k), otypes=[np.int64])(a)
        n = self.order - 1
        if _is_int(a):
            if a == 0:
                return 1 if k == 0 else 0
            return int(self._exp[(self._log[a] * k) % n])
        a = np.asarray(a, dtype=np.int64)
        r = self._exp[(self._log[a] * k) % n]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def exp(self, k):
        """``generator ** k``."""
        return self._exp[np.asarray(k) % (self.order - 1)] if not _is_int(k) else int(self._exp[k % (self.order - 1)])

    def log(self, a) -> int:
        """Discrete log base the generator; ``a`` must be nonzero."""
        if int(a) == 0:
            raise ZeroDivisionError("log of zero")
        if self._log is not None:
            return int(self._log[int(a)])
        x, k = 1, 0
        while x != int(a):
            x, k = self.mul(x, self.generator), k + 1
        return k

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape=None, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.order, size=shape, dtype=np.int64)

    # -- matrices --------------------------------------------------------

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.base is None:
            return (A @ B) % self.p
        out = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
        for i in range(A.shape[-1]):
            out = self.add(out, self.mul(A[..., i, None], B[i]))
        return out

    def dot(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.base is None:
            return int((x * y).sum() % self.p)
        acc = 0
        for v in self.mul(x, y).ravel():
            acc = self.add(acc, int(v))
        return int(acc)

    # -- polynomials over this field (little-endian lists) ----------------

    def poly_mod(self, a: Sequence[int], m: Sequence[int]) -> list[int]:
        a = [int(c) for c in a]
        dm = len(m) - 1
        lead_inv = self.inv(int(m[-1]))
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c:
                f = self.mul(c, lead_inv)
                for j in range(dm + 1):
                    a[i - dm + j] = self.sub(a[i - dm + j], self.mul(f, int(m[j])))
        out = a[:dm] + [0] * (dm - len(a[:dm]))
        return out

    def poly_is_irreducible(self, f: Sequence[int]) -> bool:
        """Rabin-style test using x^(Q^k) mod f, Q the field order."""
        f = [int(c) for c in f]
        d = len(f) - 1
        if d < 1 or f[-1] == 0:
            return False
        if d == 1:
            return True
        if f[0] == 0:
            return False
        Q = self.order

        def mulmod(a, b):
            prod = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] = self.add(prod[i + j], self.mul(x, y))
            return self.poly_mod(prod, f)

        def powmod(a, k):
            r = [1] + [0] * (d - 1)
            while k:
                if k & 1:
                    r = mulmod(r, a)
                a = mulmod(a, a)
                k >>= 1
            return r

        def gcd(a, b):
            a, b = _trim(a), _trim(b)
            while b:
                a, b = b, _trim(self.poly_mod(a, b)) if len(b) > 1 else []
            return a

        x = [0, 1] + [0] * (d - 2)
        # x^(Q^d) == x mod f
        y = x
        for _ in range(d):
            y = powmod(y, Q)
        if _trim(self.poly_sub(y, x)):
            return False
        for r in _prime_factors(d):
            y = x
            for _ in range(d // r):
                y = powmod(y, Q)
            g = gcd(f, self.poly_sub(y, x))
            if len(g) > 1:
                return False
        return True

    def poly_sub(self, a, b):
        n = max(len(a), len(b))
        a = list(a) + [0] * (n - len(a))
        b = list(b) + [0] * (n - len(b))
        return [self.sub(x, y) for x, y in zip(a, b)]

    def smallest_irreducible(self, d: int) -> tuple[int, ...]:
        """Lexicographically smallest monic irreducible of degree ``d``.

        Candidates are ordered by the integer ``sum(c_i * Q**i)`` of their
        lower coefficients.
        """
        for low in itertools.product(range(self.order), repeat=d):
            f = tuple(low[::-1]) + (1,)
            if self.poly_is_irreducible(f):
                return f
        raise FieldError("no irreducible polynomial found")  # pragma: no cover


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_int(a) -> bool:
    return isinstance(a, (int, np.integer))


def _both_int(a, b) -> bool:
    return _is_int(a) and _is_int(b)


def default_modulus(base: FiniteField, d: int) -> tuple[int, ...]:
    if base.is_prime_field and (base.p, d) in CONWAY:
        return CONWAY[(base.p, d)]
    return base.smallest_irreducible(d)


class FieldTower:
    """GF(p) <= GF(q) <= GF(q^m) with a fixed GF(q)-basis of the top field.

    ``base`` is GF(q), ``top`` is GF(q^m).  ``alpha`` is the class of x in the
    top field; the default basis is (1, alpha, ..., alpha^(m-1)).
    """

    def __init__(self, p: int, e: int, m: int, modulus_q=None, modulus_qm=None, basis=None):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if e < 1 or m < 1:
            raise FieldError("e and m must be positive")
        self.p, self.e, self.m = p, e, m
        self.prime = FiniteField.prime(p)
        if e == 1:
            self.base = self.prime
            self.modulus_q = (0, 1)
        else:
            mq = tuple(modulus_q) if modulus_q is not None else default_modulus(self.prime, e)
            if len(mq) != e + 1:
                raise FieldError("modulus_q must have degree e")
            self.base = FiniteField(self.prime, mq)
            self.modulus_q = mq
        mqm = tuple(modulus_qm) if modulus_qm is not None else default_modulus(self.base, m)
        if len(mqm) != m + 1:
            raise FieldError("modulus_qm must have degree m")
        self.top = FiniteField(self.base, mqm)
        self.modulus_qm = mqm
        self.q = self.base.order
        if m == 1:
            self.alpha = int(self.base.neg(mqm[0]))
        else:
            self.alpha = self.q
        if basis is None:
            basis = [self.top.pow(self.alpha, i) for i in range(m)] if m > 1 else [1]
        self.basis = tuple(int(b) for b in basis)
        if len(self.basis) != m:
            raise FieldError("basis must have m elements")
        from . import linalg

        B = self.top.digits(np.array(self.basis))
        if linalg.rank(B, self.base) != m:
            raise FieldError("basis is not linearly independent over GF(q)")
        self._basis_matrix = B
        self._basis_inv = None if np.array_equal(B, np.eye(m, dtype=np.int64)) else linalg.inverse(B, self.base)

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and (self.p, self.e, self.m, self.modulus_q, self.modulus_qm, self.basis)
            == (other.p, other.e, other.m, other.modulus_q, other.modulus_qm, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.m, self.modulus_q, self.modulus_qm, self.basis))

    def with_basis(self, basis) -> FieldTower:
        return FieldTower(self.p, self.e, self.m, self.modulus_q, self.modulus_qm, basis)

    @cached_property
    def basis_matrix(self) -> np.ndarray:
        """Rows are the polynomial-basis coordinates of the basis elements."""
        return self._basis_matrix

    def phi(self, x):
        """Coordinates of top-field elements in the basis, shape ``(..., m)``."""
        d = self.top.digits(x)
        if self._basis_inv is None:
            return d
        return self.base.matmul(d, self._basis_inv)

    def phi_inv(self, c):
        c = np.asarray(c, dtype=np.int64)
        if self._basis_inv is not None:
            c = self.base.matmul(c, self._basis_matrix)
        out = self.top.from_digits(c)
        return int(out) if out.ndim == 0 else out

    def embed(self, a):
        """GF(q) -> GF(q^m) as constant polynomials."""
        arr = np.asarray(a)
        if np.any((arr < 0) | (arr >= self.q)):
            raise FieldError("not an element of GF(q)")
        return a

    def in_base(self, x) -> np.ndarray:
        return np.asarray(x) < self.q

    def mult_matrix(self, beta) -> np.ndarray:
        """Matrix M with phi(beta * x) = phi(x) @ M; batched over ``beta``."""
        beta = np.asarray(beta, dtype=np.int64)
        b = np.array(self.basis, dtype=np.int64)
        prods = self.top.mul(beta[..., None], b)  # (..., m) : beta * b_i
        return self.phi(prods)  # row i = phi(beta b_i)

    def trace(self, x):
        """Trace from GF(q^m) down to GF(q)."""
        acc = x if not _is_int(x) else int(x)
        y = x
        for _ in range(self.m - 1):
            y = self.top.pow(y, self.q)
            acc = self.top.add(acc, y)
        return acc

    def complete_basis(self, V) -> np.ndarray:
        """Extend the rows of a full-rank r x m matrix to an invertible m x m one."""
        from . import linalg

        V = np.asarray(V, dtype=np.int64).reshape(-1, self.m)
        r = V.shape[0]
        if linalg.rank(V, self.base) != r:
            raise FieldError("subspace basis is rank deficient")
        rows = [row for row in V]
        for j in range(self.m):
            if len(rows) == self.m:
                break
            e = np.zeros(self.m, dtype=np.int64)
            e[j] = 1
            if linalg.rank(np.array(rows + [e]), self.base) == len(rows) + 1:
                rows.append(e)
        return np.array(rows, dtype=np.int64)

    # -- serialisation ---------------------------------------------------

    def to_text(self) -> str:
        def lst(xs):
            return " ".join(str(int(x)) for x in xs)

        return ",".join([str(self.p), str(self.e), str(self.m), lst(self.modulus_q), lst(self.modulus_qm), lst(self.basis)])

    @classmethod
    def from_text(cls, s: str) -> FieldTower:
        parts = [x.strip() for x in s.strip().split(",")]
        if len(parts) != 6:
            raise FieldError(f"tower text needs 6 comma-separated fields, got {len(parts)}")
        p, e, m = (int(x) for x in parts[:3])
        mq, mqm, basis = ([int(v) for v in x.split()] for x in parts[3:])
        return cls(p, e, m, mq if e > 1 else None, mqm, basis)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "modulus_q": list(self.modulus_q),
            "modulus_qm": list(self.modulus_qm),
            "basis": list(self.basis),
        }

    @classmethod
    def from_dict(cls, d: dict) -> FieldTower:
        return cls(d["p"], d["e"], d["m"], d["modulus_q"] if d["e"] > 1 else None, d["modulus_qm"], d.get("basis"))


def build_tower(p: int, e: int, m: int, modulus_q=None, modulus_qm=None, basis=None) -> FieldTower:
    return FieldTower(p, e, m, modulus_q, modulus_qm, basis)
