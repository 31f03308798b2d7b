"""Dense matrices over GF(q) stored as int64 numpy arrays of element codes."""

from __future__ import annotations

import numpy as np

from .field import GF


def as_matrix(M, ncols: int | None = None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        if A.size == 0 and ncols is not None:
            return A.reshape(0, ncols)
        A = A.reshape(1, -1)
    return A


def rref(F: GF, M) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``M`` and
    its first ``rank`` rows are the nonzero ones.
    """
    A = as_matrix(M).copy()
    rows, cols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.vmul(A[r], F.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = F.vsub(A[hit], F.vmul(col[hit][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank(F: GF, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return rref(F, A)[1]


def row_basis(F: GF, M) -> np.ndarray:
    A = as_matrix(M)
    if A.shape[0] == 0:
        return A
    R, r, _ = rref(F, A)
    return R[:r]


def subspace_contains(F: GF, A, B) -> bool:
    """True iff the row space of ``B`` lies inside the row space of ``A``."""
    A = as_matrix(A)
    B = as_matrix(B, A.shape[1] if A.ndim == 2 else None)
    if B.shape[0] == 0:
        return True
    if A.shape[0] == 0:
        return not np.any(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"column mismatch: {A.shape[1]} vs {B.shape[1]}")
    return rank(F, A) == rank(F, np.vstack([A, B]))


def nullspace(F: GF, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{v : M v^T = 0}``."""
    A = as_matrix(M, ncols)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, r, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, pc in enumerate(piv):
            out[i, pc] = F.neg(int(R[j, f]))
    return out


def systematic(F: GF, M, column_order=None) -> tuple[np.ndarray, list[int]]:
    """Row-reduce with pivots searched in ``column_order``.

    Returns the reduced full-rank generator (rows indexed like the pivots)
    and the pivot columns in original indexing.
    """
    A = row_basis(F, M)
    n = A.shape[1]
    order = list(range(n)) if column_order is None else list(column_order)
    R, r, piv = rref(F, A[:, order])
    out = np.zeros((r, n), dtype=np.int64)
    out[:, order] = R[:r]
    return out, [order[c] for c in piv]


def encode(F: GF, G, msg) -> np.ndarray:
    G = as_matrix(G)
    msg = np.asarray(msg, dtype=np.int64).reshape(1, -1)
    if G.shape[0] == 0:
        return np.zeros(G.shape[1], dtype=np.int64)
    return F.matmul(msg, G)[0]


def in_row_space(F: GF, G, v) -> bool:
    return subspace_contains(F, G, as_matrix(v))


def intersect(F: GF, A, B) -> np.ndarray:
    """Basis of the intersection of two row spaces."""
    A = as_matrix(A)
    B = as_matrix(B)
    n = A.shape[1] if A.shape[0] else B.shape[1]
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # dual of (dual A + dual B)
    dA = nullspace(F, A)
    dB = nullspace(F, B)
    S = np.vstack([dA, dB]) if dA.size or dB.size else np.zeros((0, n), dtype=np.int64)
    if S.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return nullspace(F, S)
