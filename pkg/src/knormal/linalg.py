"""Gaussian elimination over finite fields.

The scalar routines take any field object (F_q or the tower).  ``batch_rank``
row-reduces a stack of small matrices over F_q at once with numpy lookup
tables; it is the census workhorse.
"""
import numpy as np


def rank(F, rows) -> int:
    A = [list(r) for r in rows]
    if not A:
        return 0
    ncols = len(A[0])
    z = F.zero
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != z), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(r + 1, len(A)):
            f = A[i][c]
            if f != z:
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def inverse(F, M):
    """Inverse of the square matrix ``M`` (list of rows); ValueError if singular."""
    n = len(M)
    A = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M)]
    z = F.zero
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != z), None)
        if piv is None:
            raise ValueError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(inv, x) for x in A[c]]
        for i in range(n):
            f = A[i][c]
            if i != c and f != z:
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return tuple(tuple(row[n:]) for row in A)


def mat_vec(F, M, v):
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, v):
            if a != F.zero and b != F.zero:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(F, A, B):
    cols = list(zip(*B))
    return tuple(tuple(mat_vec(F, [row], col)[0] for col in cols) for row in A)


def identity(F, n):
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def batch_rank(fq, mats: np.ndarray) -> np.ndarray:
    """Ranks over F_q of a ``(B, n, c)`` stack of matrices with F_q-index entries."""
    add_t, mul_t, neg_t, inv_t = fq.tables
    A = mats.astype(add_t.dtype, copy=True)
    B, n, ncols = A.shape
    ranks = np.zeros(B, dtype=np.int64)
    rows = np.arange(n)
    active = np.arange(B)
    for c in range(ncols):
        if active.size == 0:
            break
        sub = A[active]
        r = ranks[active]
        cand = (sub[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if has.any():
            sel = np.nonzero(has)[0]
            piv = cand[sel].argmax(axis=1)
            rr = r[sel]
            M = sub[sel]
            k = np.arange(sel.size)
            prow = M[k, piv].copy()
            M[k, piv] = M[k, rr]
            prow = mul_t[inv_t[prow[:, c]][:, None], prow]
            M[k, rr] = prow
            factors = M[:, :, c].copy()
            factors[k, rr] = 0
            M = add_t[M, mul_t[neg_t[factors][:, :, None], prow[:, None, :]]]
            sub[sel] = M
            A[active] = sub
            ranks[active[sel]] += 1
        # a full-rank matrix needs no further columns
        active = active[ranks[active] < n]
    return ranks
