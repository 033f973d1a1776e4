"""Exact dense linear algebra over a :class:`~gsscodes.fields.FiniteField`.

Matrices are 2-D int64 numpy arrays whose entries are field elements.  Over
GF(2) rows are bit-packed into uint64 words and eliminated with XOR.
"""

from __future__ import annotations

import numpy as np

from .fields import FiniteField


def _as_matrix(M, cols: int | None = None) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(0 if M.size == 0 else 1, -1) if cols is None else M.reshape(-1, cols)
    return M


# -- GF(2) fast path ------------------------------------------------------


def _pack(M: np.ndarray) -> np.ndarray:
    rows, cols = M.shape
    nbytes = -(-cols // 64) * 8
    packed = np.packbits(M.astype(np.uint8), axis=1, bitorder="little")
    out = np.zeros((rows, nbytes), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view(np.uint64)


def _unpack(P: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(P.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols].astype(np.int64)


def _rref_gf2(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = M.shape
    P = _pack(M)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, b = divmod(c, 64)
        colbits = (P[r:, w] >> np.uint64(b)) & np.uint64(1)
        nz = np.flatnonzero(colbits)
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            P[[r, i]] = P[[i, r]]
        hit = ((P[:, w] >> np.uint64(b)) & np.uint64(1)).astype(bool)
        hit[r] = False
        if hit.any():
            P[hit] ^= P[r]
        pivots.append(c)
        r += 1
    return _unpack(P, cols), pivots


# -- general fields ---------------------------------------------------------


def _rref_general(M: np.ndarray, F: FiniteField) -> tuple[np.ndarray, list[int]]:
    R = M.copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.mul(R[r], F.inv(piv))
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            R[others] = F.sub(R[others], F.mul(R[others, c][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rref(M, F: FiniteField) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivot_columns)``; ``R`` has the shape of ``M`` with
    zero rows at the bottom.  Pivots are chosen top-to-bottom, left-to-right.
    """
    M = _as_matrix(M)
    if M.size == 0:
        return M.copy(), 0, []
    if F.order == 2:
        R, piv = _rref_gf2(M)
    else:
        R, piv = _rref_general(M, F)
    return R, len(piv), piv


def rank(M, F: FiniteField) -> int:
    return rref(M, F)[1]


def row_basis(M, F: FiniteField) -> np.ndarray:
    """Nonzero rows of the RREF (canonical basis of the row space)."""
    M = _as_matrix(M)
    R, k, _ = rref(M, F)
    return R[:k]


def right_kernel(M, F: FiniteField, cols: int | None = None) -> np.ndarray:
    """Rows spanning ``{x : M x^T = 0}``.

    ``cols`` is only needed when ``M`` has no rows.
    """
    M = _as_matrix(M)
    n = M.shape[1] if M.size or cols is None else cols
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, k, piv = rref(M, F)
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    if not free:
        return K
    K[np.arange(len(free)), free] = 1
    if k:
        K[:, piv] = F.neg(R[:k][:, free].T)
    return K


def systematic_form(G, F: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(G_sys, perm)`` with ``G_sys = [I | A]`` and ``G_sys`` spanning ``G[:, perm]``.

    ``perm`` is the identity unless the leading k x k block of ``G`` is singular,
    in which case the leftmost independent columns are moved to the front.
    """
    G = _as_matrix(G)
    R, k, piv = rref(G, F)
    if k != G.shape[0]:
        raise ValueError(f"generator matrix is rank deficient ({k} < {G.shape[0]})")
    n = G.shape[1]
    pset = set(piv)
    perm = np.array(list(piv) + [c for c in range(n) if c not in pset], dtype=np.int64)
    return R[:k][:, perm], perm


def row_space_equal(A, B, F: FiniteField) -> bool:
    A = _as_matrix(A)
    B = _as_matrix(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError("column counts differ")
    RA = row_basis(A, F)
    RB = row_basis(B, F)
    return RA.shape == RB.shape and bool(np.array_equal(RA, RB))


def in_row_space(v, M, F: FiniteField) -> bool:
    M = _as_matrix(M)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if M.shape[0] == 0:
        return not v.any()
    return rank(np.vstack([M, v]), F) == rank(M, F)


def inverse(M, F: FiniteField) -> np.ndarray:
    M = _as_matrix(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix is not square")
    R, k, _ = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), F)
    if k < n or not np.array_equal(R[:, :n], np.eye(n, dtype=np.int64)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def solve_left(A, b, F: FiniteField):
    """Some ``x`` with ``x @ A == b``, or ``None`` if inconsistent."""
    A = _as_matrix(A)
    b = np.asarray(b, dtype=np.int64)
    k, n = A.shape
    aug = np.hstack([A.T, b.reshape(n, 1)])
    R, r, piv = rref(aug, F)
    if piv and piv[-1] == k:
        return None
    x = np.zeros(k, dtype=np.int64)
    for row, c in enumerate(piv):
        x[c] = R[row, k]
    return x


def matmul(A, B, F: FiniteField) -> np.ndarray:
    A = _as_matrix(A)
    B = _as_matrix(B)
    if F.order == 2:
        return (A @ B) & 1
    return F.matmul(A, B)


def block_diag(blocks) -> np.ndarray:
    blocks = [np.asarray(b, dtype=np.int64) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# -- text format ------------------------------------------------------------


def format_matrix(M) -> str:
    M = _as_matrix(M)
    return "\n".join(" ".join(str(int(x)) for x in row) for row in M)


def parse_matrix(text: str, field_order: int | None = None, cols: int | None = None) -> np.ndarray:
    rows = [[int(x) for x in line.split()] for line in text.strip().splitlines() if line.strip()]
    if not rows:
        return np.zeros((0, cols or 0), dtype=np.int64)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    M = np.array(rows, dtype=np.int64)
    if field_order is not None and np.any((M < 0) | (M >= field_order)):
        raise ValueError(f"entries must lie in [0, {field_order})")
    return M
