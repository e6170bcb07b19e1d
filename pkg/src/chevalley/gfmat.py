"""Batched matrix arithmetic over table-backed finite rings.

Matrices are numpy arrays of ring codes with shape (..., d, d); all leading
axes broadcast.  Prime-residue rings (GF(p), Z/n) get an integer fast path,
everything else goes through the ring's lookup tables.
"""

from __future__ import annotations

import itertools

import numpy as np

from .rings import GF, FiniteRing, Zmod


def _residue_modulus(ring) -> int | None:
    if isinstance(ring, GF) and ring.deg == 1:
        return ring.size
    if isinstance(ring, Zmod):
        return ring.size
    return None


def mat_mul(ring: FiniteRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = _residue_modulus(ring)
    if n is not None:
        return ((A.astype(np.int64) @ B.astype(np.int64)) % n).astype(ring.dtype)
    k = A.shape[-1]
    assert B.shape[-2] == k
    C = None
    for t in range(k):
        term = ring.mul_t[A[..., :, t, None], B[..., None, t, :]]
        C = term if C is None else ring.add_t[C, term]
    return C


def mat_mul_many(ring, mats) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(ring, out, m)
    return out


def identity(ring: FiniteRing, d: int) -> np.ndarray:
    out = np.full((d, d), ring.zero, dtype=ring.dtype)
    np.fill_diagonal(out, ring.one)
    return out


def scalar_mat(ring: FiniteRing, d: int, c) -> np.ndarray:
    out = np.full((d, d), ring.zero, dtype=ring.dtype)
    np.fill_diagonal(out, c)
    return out


def from_int_matrix(ring: FiniteRing, M: np.ndarray) -> np.ndarray:
    """Reduce an integer matrix into ring codes through Z -> R."""
    return ring.from_int_array(np.asarray(M, dtype=np.int64))


def scale(ring: FiniteRing, c, A: np.ndarray) -> np.ndarray:
    return ring.mul_t[c, A]


def mat_add(ring: FiniteRing, A, B) -> np.ndarray:
    return ring.add_t[A, B]


def mat_det(ring: FiniteRing, A: np.ndarray) -> np.ndarray:
    """Batched determinant by Leibniz expansion; fine for d <= 4."""
    d = A.shape[-1]
    det = None
    for perm in itertools.permutations(range(d)):
        term = None
        for i, j in enumerate(perm):
            entry = A[..., i, j]
            term = entry if term is None else ring.mul_t[term, entry]
        sgn = 1
        p = list(perm)
        for i in range(d):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sgn = -sgn
        if sgn < 0:
            term = ring.neg_t[term]
        det = term if det is None else ring.add_t[det, term]
    return det


def mat_inv(ring: FiniteRing, A: np.ndarray) -> np.ndarray:
    """Inverse of one matrix over a field, by Gauss-Jordan."""
    assert ring.is_field
    d = A.shape[0]
    M = np.concatenate([A.copy(), identity(ring, d)], axis=1)
    for col in range(d):
        piv = None
        for r in range(col, d):
            if M[r, col] != ring.zero:
                piv = r
                break
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        inv = ring.inv_t[M[col, col]]
        M[col] = ring.mul_t[inv, M[col]]
        for r in range(d):
            if r != col and M[r, col] != ring.zero:
                factor = M[r, col]
                M[r] = ring.add_t[M[r], ring.neg_t[ring.mul_t[factor, M[col]]]]
    return M[:, d:]


def rref(ring: FiniteRing, A: np.ndarray):
    """Reduced row echelon form over a field; returns (R, pivot column list)."""
    assert ring.is_field
    M = A.copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for rr in range(r, rows):
            if M[rr, c] != ring.zero:
                piv = rr
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = ring.mul_t[ring.inv_t[M[r, c]], M[r]]
        nz = np.nonzero(M[:, c] != ring.zero)[0]
        for rr in nz:
            if rr != r:
                M[rr] = ring.add_t[M[rr], ring.neg_t[ring.mul_t[M[rr, c], M[r]]]]
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace(ring: FiniteRing, A: np.ndarray) -> np.ndarray:
    """Basis of {v : A v = 0} over a field, shape (k, cols)."""
    R, pivots = rref(ring, A)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.full((len(free), cols), ring.zero, dtype=ring.dtype)
    for bi, fc in enumerate(free):
        basis[bi, fc] = ring.one
        for r, pc in enumerate(pivots):
            basis[bi, pc] = ring.neg_t[R[r, fc]]
    return basis


def span_elements(ring: FiniteRing, basis: np.ndarray, budget: int = 2_000_000) -> np.ndarray:
    """All ring-linear combinations of the basis vectors, shape (q^k, cols)."""
    k = basis.shape[0]
    total = ring.size**k
    if total > budget:
        raise ValueError(f"subspace of size {total} exceeds budget {budget}")
    combos = np.full((1, basis.shape[1]), ring.zero, dtype=ring.dtype)
    for b in basis:
        terms = ring.mul_t[np.arange(ring.size, dtype=ring.dtype)[:, None], b[None, :]]
        combos = ring.add_t[combos[:, None, :], terms[None, :, :]].reshape(-1, basis.shape[1])
    return combos
