"""Linear codes: duals, shortening, puncturing, subfield subcodes, trace codes
and exact minimum-distance oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .fields import FieldTower, FiniteField
from .rng import make_rng

ENUMERATION_BUDGET = 1 << 24
SUPPORT_SEARCH_MAX_WEIGHT = 14


class BudgetExceeded(RuntimeError):
    """Distance search gave up; ``lower_bound`` is the weight verified so far."""

    def __init__(self, lower_bound: int, message: str = ""):
        super().__init__(message or f"distance search exceeded budget (d >= {lower_bound})")
        self.lower_bound = lower_bound


class LinearCode:
    """Linear code of length ``n`` over ``field``.

    The generator is kept in reduced row echelon form, so two codes are equal
    exactly when their generators are identical arrays.
    """

    def __init__(self, field: FiniteField, G, n: int | None = None, d: int | None = None):
        G = np.asarray(G, dtype=np.int64)
        if G.ndim == 1:
            G = G.reshape(-1, n if n is not None else G.size)
        if n is None:
            n = G.shape[1]
        if G.shape[1] != n:
            raise ValueError(f"generator has {G.shape[1]} columns, expected {n}")
        self.field = field
        self.n = n
        self.G = linalg.row_basis(G, field) if G.shape[0] else np.zeros((0, n), dtype=np.int64)
        self._d = d

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def __repr__(self):
        d = "?" if self._d is None else self._d
        return f"LinearCode[{self.n}, {self.k}, {d}] over GF({self.field.order})"

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field is other.field
            and self.n == other.n
            and self.G.shape == other.G.shape
            and bool(np.array_equal(self.G, other.G))
        )

    __hash__ = None

    @classmethod
    def full_space(cls, field: FiniteField, n: int) -> LinearCode:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> LinearCode:
        return cls(field, np.zeros((0, n), dtype=np.int64), n=n)

    @classmethod
    def from_parity_check(cls, field: FiniteField, H, n: int | None = None) -> LinearCode:
        H = np.asarray(H, dtype=np.int64)
        n = H.shape[1] if n is None else n
        return cls(field, linalg.right_kernel(H, field, cols=n), n=n)

    def parity_check(self) -> np.ndarray:
        return linalg.right_kernel(self.G, self.field, cols=self.n)

    def encode(self, msg) -> np.ndarray:
        return linalg.matmul(np.asarray(msg, dtype=np.int64).reshape(1, -1), self.G, self.field)[0]

    def contains(self, word) -> bool:
        H = self.parity_check()
        if H.shape[0] == 0:
            return True
        return not linalg.matmul(H, np.asarray(word, dtype=np.int64).reshape(-1, 1), self.field).any()

    def is_subcode_of(self, other: LinearCode) -> bool:
        H = other.parity_check()
        if H.shape[0] == 0 or self.k == 0:
            return True
        return not linalg.matmul(self.G, H.T, self.field).any()

    def permute(self, perm) -> LinearCode:
        """Column permutation ``c -> c[perm]``."""
        return LinearCode(self.field, self.G[:, np.asarray(perm)], n=self.n)

    def dual(self) -> LinearCode:
        return dual(self)

    def shorten(self, positions) -> LinearCode:
        return shorten(self, positions)

    def puncture(self, positions) -> LinearCode:
        return puncture(self, positions)

    @property
    def d(self) -> int | None:
        if self._d is None:
            self._d = min_distance(self)
        return self._d


def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.field, C.parity_check(), n=C.n)


def _check_positions(C: LinearCode, positions) -> list[int]:
    I = sorted(int(i) for i in positions)
    if len(set(I)) != len(I):
        raise ValueError("repeated position")
    if any(i < 0 or i >= C.n for i in I):
        raise ValueError("position out of range")
    if len(I) >= C.n:
        raise ValueError("cannot delete every position")
    return I


def shorten(C: LinearCode, positions) -> LinearCode:
    """Codewords vanishing on ``positions``, with those positions deleted."""
    I = _check_positions(C, positions)
    keep = [j for j in range(C.n) if j not in set(I)]
    if not I:
        return C
    if C.k == 0:
        return LinearCode.zero(C.field, len(keep))
    # echelonise with the shortened columns first; rows pivoting past them vanish on I
    R, k, piv = linalg.rref(C.G[:, I + keep], C.field)
    rows = [i for i, p in enumerate(piv) if p >= len(I)]
    return LinearCode(C.field, R[rows][:, len(I):], n=len(keep))


def puncture(C: LinearCode, positions) -> LinearCode:
    I = _check_positions(C, positions)
    keep = [j for j in range(C.n) if j not in set(I)]
    return LinearCode(C.field, C.G[:, keep], n=len(keep))


def expand_parity_check(H, tower: FieldTower) -> np.ndarray:
    """Replace each entry h by the column phi(h)^T; rows grow by a factor m."""
    H = np.asarray(H, dtype=np.int64)
    r, n = H.shape
    coords = tower.phi(H)  # (r, n, m)
    return coords.transpose(0, 2, 1).reshape(r * tower.m, n)


def subfield_subcode(C: LinearCode, tower: FieldTower) -> LinearCode:
    """``C`` intersected with GF(q)^n."""
    if C.field is tower.base:
        return C
    if C.field is not tower.top:
        raise ValueError("code is not defined over the tower's top field")
    Ht = expand_parity_check(C.parity_check(), tower)
    return LinearCode.from_parity_check(tower.base, Ht, n=C.n)


def trace_code(C: LinearCode, tower: FieldTower) -> LinearCode:
    """GF(q)-span of the coordinatewise traces of the codewords of ``C``."""
    if C.field is not tower.top:
        raise ValueError("code is not defined over the tower's top field")
    if C.k == 0:
        return LinearCode.zero(tower.base, C.n)
    b = np.array(tower.basis, dtype=np.int64)
    scaled = tower.top.mul(b[:, None, None], C.G[None, :, :])  # (m, k, n)
    rows = tower.trace(scaled.reshape(-1, C.n))
    return LinearCode(tower.base, rows, n=C.n)


# -- minimum distance ---------------------------------------------------------


def block_weights(words: np.ndarray, block: int = 1) -> np.ndarray:
    words = np.asarray(words)
    if block == 1:
        return np.count_nonzero(words, axis=-1)
    shaped = words.reshape(words.shape[:-1] + (-1, block))
    return np.count_nonzero(shaped.any(axis=-1), axis=-1)


def span(F: FiniteField, rows: np.ndarray) -> np.ndarray:
    """All F-linear combinations of ``rows`` (q^len(rows) words)."""
    words = np.zeros((1, rows.shape[1]), dtype=np.int64)
    scalars = F.elements()
    for row in rows:
        multiples = F.mul(scalars[:, None], row[None, :])  # (q, n)
        words = F.add(words[None, :, :], multiples[:, None, :]).reshape(-1, rows.shape[1])
    return words


def _min_weight_enumerate(F: FiniteField, G: np.ndarray, block: int, chunk_bits: int = 16) -> int:
    k = G.shape[0]
    q = F.order
    inner_rows = max(1, min(k, int(chunk_bits // max(1, math.log2(q)))))
    inner = span(F, G[k - inner_rows :])
    inner_w = block_weights(inner, block)
    best = int(inner_w[1:].min()) if inner.shape[0] > 1 else math.inf
    outer = G[: k - inner_rows]
    if outer.shape[0] == 0:
        return int(best)
    scalars = range(q)
    for combo in itertools.product(scalars, repeat=outer.shape[0]):
        if not any(combo):
            continue
        offset = np.zeros(G.shape[1], dtype=np.int64)
        for c, row in zip(combo, outer):
            if c:
                offset = F.add(offset, F.mul(c, row))
        w = block_weights(F.add(inner, offset[None, :]), block)
        best = min(best, int(w.min()))
        if best == 1:
            break
    return int(best)


def _min_weight_support_search(
    F: FiniteField, H: np.ndarray, n_blocks: int, block: int, start: int, max_weight: int, deadline=None
) -> int:
    """Smallest w such that some w blocks carry a nonzero codeword.

    A codeword supported inside a block set S exists iff the parity-check
    columns of S are dependent.
    """
    import time

    for w in range(max(1, start), max_weight + 1):
        if w * block > H.shape[0]:
            # more columns than independent parity rows: always dependent
            return w
        for S in itertools.combinations(range(n_blocks), w):
            cols = [b * block + j for b in S for j in range(block)]
            sub = H[:, cols]
            if linalg.rank(sub, F) < len(cols):
                return w
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded(w)
    raise BudgetExceeded(max_weight + 1)


def min_weight(
    F: FiniteField,
    G: np.ndarray,
    n_blocks: int,
    block: int = 1,
    budget: int = ENUMERATION_BUDGET,
    method: str = "auto",
    max_weight: int = SUPPORT_SEARCH_MAX_WEIGHT,
    lower_bound: int = 1,
    time_limit: float | None = None,
) -> int | None:
    """Exact minimum (block) weight of the nonzero words spanned by ``G``.

    ``method`` is ``"enumerate"``, ``"support"`` or ``"auto"`` (enumerate when
    ``q^k <= budget``, otherwise support search).  ``lower_bound`` lets the
    support search skip weights already excluded by construction.
    Returns ``None`` for the zero code.
    """
    import time

    G = linalg.row_basis(np.asarray(G, dtype=np.int64), F)
    k = G.shape[0]
    if k == 0:
        return None
    size = F.order ** k
    if method == "auto":
        method = "enumerate" if size <= budget else "support"
    if method == "enumerate":
        if size > budget:
            raise BudgetExceeded(1)
        return _min_weight_enumerate(F, G, block)
    if method != "support":
        raise ValueError(f"unknown method {method!r}")
    H = linalg.right_kernel(G, F, cols=G.shape[1])
    deadline = None if time_limit is None else time.monotonic() + time_limit
    return _min_weight_support_search(F, H, n_blocks, block, lower_bound, max_weight, deadline)


def min_distance(C: LinearCode, budget: int = ENUMERATION_BUDGET, method: str = "auto", **kw) -> int | None:
    return min_weight(C.field, C.G, C.n, 1, budget=budget, method=method, **kw)


def min_distance_exhaustive(C: LinearCode, budget: int = ENUMERATION_BUDGET) -> int | None:
    return min_distance(C, budget=budget, method="enumerate")


def random_low_weight_search(
    F: FiniteField,
    G: np.ndarray,
    block: int = 1,
    trials: int = 1000,
    rng: np.random.Generator | None = None,
    time_limit: float | None = None,
    combos: int = 2,
) -> tuple[int, np.ndarray]:
    """Randomised information-set search for a low-weight codeword.

    Returns ``(weight, codeword)``: an upper bound on the minimum (block)
    weight, witnessed by an explicit codeword.  Not exhaustive.
    """
    import time

    rng = rng or make_rng(0)
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    deadline = None if time_limit is None else time.monotonic() + time_limit
    best_w, best_c = math.inf, None
    nz = F.elements()[1:]
    for _ in range(trials):
        perm = rng.permutation(n)
        R, r, piv = linalg.rref(G[:, perm], F)
        R = R[:r]
        inv = np.argsort(perm)
        rows = R[:, inv]
        for size in range(1, combos + 1):
            for idx in itertools.combinations(range(r), size):
                coeffs = rng.choice(nz, size=size)
                word = np.zeros(n, dtype=np.int64)
                for c, i in zip(coeffs, idx):
                    word = F.add(word, F.mul(int(c), rows[i]))
                w = int(block_weights(word[None, :], block)[0])
                if 0 < w < best_w:
                    best_w, best_c = w, word
        if deadline is not None and time.monotonic() > deadline:
            break
    return int(best_w), best_c


@dataclass
class DistanceReport:
    """Distance with an honest label: exact, or only bounded."""

    exact: int | None = None
    lower: int | None = None
    upper: int | None = None
    method: str = ""
    notes: list[str] = field(default_factory=list)

    def label(self) -> str:
        if self.exact is not None:
            return f"{self.exact} (exact, {self.method})"
        lo = "?" if self.lower is None else str(self.lower)
        hi = "?" if self.upper is None else str(self.upper)
        return f"{lo} <= d <= {hi} ({self.method})"


def analyze_distance(
    F: FiniteField,
    G: np.ndarray,
    n_blocks: int,
    block: int = 1,
    budget: int = ENUMERATION_BUDGET,
    lower_bound: int = 1,
    max_weight: int = SUPPORT_SEARCH_MAX_WEIGHT,
    time_limit: float | None = None,
    upper_trials: int = 200,
    rng: np.random.Generator | None = None,
) -> DistanceReport:
    """Enumeration, then support search, then a randomised upper bound."""
    G = np.asarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return DistanceReport(method="zero code")
    size = F.order ** G.shape[0]
    if size <= budget:
        return DistanceReport(exact=min_weight(F, G, n_blocks, block, method="enumerate"), method="enumeration")
    try:
        d = min_weight(
            F, G, n_blocks, block, method="support", lower_bound=lower_bound,
            max_weight=max_weight, time_limit=time_limit,
        )
        return DistanceReport(exact=d, method="support search")
    except BudgetExceeded as exc:
        up, _ = random_low_weight_search(F, G, block, trials=upper_trials, rng=rng)
        return DistanceReport(lower=max(lower_bound, exc.lower_bound), upper=up, method="support search + random ISD")
