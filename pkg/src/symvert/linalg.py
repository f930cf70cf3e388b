"""Exact dense linear algebra over a FieldCtx.

Matrices are numpy int64 arrays of field elements (column-vector
convention: a matrix acts on the left of a column vector).  Subspaces carry
a canonical reduced-row-echelon basis, so equality of subspaces is equality
of representations.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_add(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.bitwise_xor(A, B)


def mat_mul(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product via bit-plane decomposition (m^2 integer matmuls)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    m = F.m
    if m == 1:
        return (A @ B) & 1
    # reduction masks: x^t mod modulus, for t < 2m-1
    red = _reduction_masks(F)
    planes = [None] * (2 * m - 1)
    Abits = [(A >> i) & 1 for i in range(m)]
    Bbits = [(B >> j) & 1 for j in range(m)]
    for i in range(m):
        for j in range(m):
            P = (Abits[i] @ Bbits[j]) & 1
            t = i + j
            planes[t] = P if planes[t] is None else planes[t] ^ P
    C = np.zeros(planes[0].shape, dtype=np.int64)
    for t, P in enumerate(planes):
        if P is not None:
            C ^= P * red[t]
    return C


_red_cache: dict[tuple[int, int], list[int]] = {}


def _reduction_masks(F: FieldCtx) -> list[int]:
    key = (F.m, F.modulus)
    masks = _red_cache.get(key)
    if masks is None:
        masks = []
        t = 1
        for _ in range(2 * F.m - 1):
            masks.append(t)
            t <<= 1
            if t >> F.m & 1:
                t ^= F.modulus
        _red_cache[key] = masks
    return masks


def mat_vec(F: FieldCtx, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return mat_mul(F, A, np.asarray(v, dtype=np.int64).reshape(-1, 1)).ravel()


def vec_mat(F: FieldCtx, v: np.ndarray, A: np.ndarray) -> np.ndarray:
    return mat_mul(F, np.asarray(v, dtype=np.int64).reshape(1, -1), A).ravel()


def mat_pow(F: FieldCtx, A: np.ndarray, e: int) -> np.ndarray:
    R = eye(A.shape[0])
    while e:
        if e & 1:
            R = mat_mul(F, R, A)
        A = mat_mul(F, A, A)
        e >>= 1
    return R


def rref(
    F: FieldCtx, A: np.ndarray, record_transform: bool = False
) -> tuple[np.ndarray, list[int], np.ndarray | None]:
    """Reduced row echelon form; optionally the transform T with T A = R."""
    R = np.array(A, dtype=np.int64, copy=True)
    rows, cols = R.shape
    T = eye(rows) if record_transform else None
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
            if T is not None:
                T[[r, p]] = T[[p, r]]
        pv = int(R[r, c])
        if pv != 1:
            s = F.inv(pv)
            R[r] = F.vscale(s, R[r])
            if T is not None:
                T[r] = F.vscale(s, T[r])
        fac = R[:, c].copy()
        fac[r] = 0
        touch = np.nonzero(fac)[0]
        if touch.size:
            R[touch] ^= F.vmul(fac[touch, None], R[r][None, :])
            if T is not None:
                T[touch] ^= F.vmul(fac[touch, None], T[r][None, :])
        pivots.append(c)
        r += 1
    return R, pivots, T


def rank(F: FieldCtx, A: np.ndarray) -> int:
    return len(rref(F, A)[1])


def row_space(F: FieldCtx, A: np.ndarray) -> np.ndarray:
    R, pivots, _ = rref(F, A)
    return R[: len(pivots)]


def kernel(F: FieldCtx, A: np.ndarray) -> np.ndarray:
    """Right null space: rows of the result v satisfy A v = 0."""
    rows, cols = A.shape
    if F.m == 1 and A.size >= 1 << 16:
        return _kernel_gf2_packed(A)
    R, pivots, _ = rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(len(free), cols)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = int(R[r, fc])  # char 2: -x = x
    return basis


def _kernel_gf2_packed(A: np.ndarray) -> np.ndarray:
    """GF(2) null space with rows packed into Python ints (fast path)."""
    packed = np.packbits((A & 1).astype(np.uint8), axis=1, bitorder="little")
    rows = (int.from_bytes(packed[i].tobytes(), "little") for i in range(A.shape[0]))
    return kernel_gf2_stream(rows, A.shape[1])


def kernel_gf2_stream(row_ints, cols: int) -> np.ndarray:
    """GF(2) null space from an iterable of bit-packed constraint rows.

    Never materializes a dense matrix, so callers can stream very wide
    systems (e.g. equivariance constraints on large modules).
    """
    piv: dict[int, int] = {}
    for cur in row_ints:
        cur = int(cur)
        while cur:
            c = (cur & -cur).bit_length() - 1
            if c in piv:
                cur ^= piv[c]
            else:
                piv[c] = cur
                break
    # back-reduce to rref
    for c in sorted(piv, reverse=True):
        row = piv[c]
        x = row & ~(1 << c)
        while x:
            lb = x & -x
            c2 = lb.bit_length() - 1
            if c2 in piv:
                row ^= piv[c2]
            x ^= lb
        piv[c] = row
    free = [c for c in range(cols) if c not in piv]
    basis = zeros(len(free), cols)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for pc, prow in piv.items():
            if prow >> fc & 1:
                basis[i, pc] = 1
    return basis


def solve(
    F: FieldCtx, A: np.ndarray, b: np.ndarray, certificate: bool = False
) -> tuple[np.ndarray | None, np.ndarray | None]:
    """Solve A x = b.  Returns (x, None) or (None, y) with yA=0, y.b != 0.

    The inconsistency certificate y is only computed when requested (it
    needs the full row transform, which is expensive for tall systems).
    """
    b = np.asarray(b, dtype=np.int64).ravel()
    n = A.shape[1]
    if certificate:
        R, pivots, T = rref(F, A, record_transform=True)
        tb = mat_vec(F, T, b)
        for r in range(len(pivots), A.shape[0]):
            if tb[r] != 0:
                return None, T[r]
        x = zeros(1, n).ravel()
        for r, c in enumerate(pivots):
            x[c] = int(tb[r])
        return x, None
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots, _ = rref(F, aug)
    if pivots and pivots[-1] == n:
        return None, None
    x = zeros(1, n).ravel()
    for r, c in enumerate(pivots):
        x[c] = int(R[r, n])
    return x, None


def inverse(F: FieldCtx, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("inverse of non-square matrix")
    aug = np.concatenate([A, eye(n)], axis=1)
    R, pivots, _ = rref(F, aug)
    if pivots[: n] != list(range(n)) if len(pivots) >= n else True:
        if len(pivots) < n or pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
    return R[:, n:]


def is_invertible(F: FieldCtx, A: np.ndarray) -> bool:
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def is_nilpotent(F: FieldCtx, A: np.ndarray) -> bool:
    n = A.shape[0]
    P = A
    k = 1
    while k < max(n, 2):
        if not P.any():
            return True
        P = mat_mul(F, P, P)
        k <<= 1
    return not P.any()


def min_poly(F: FieldCtx, A: np.ndarray) -> list[int]:
    """Monic minimal polynomial (coefficient list, index = power)."""
    from . import polys

    n = A.shape[0]
    mu = [1]
    for i in range(n):
        v = zeros(1, n).ravel()
        v[i] = 1
        # local minimal polynomial of (A, v)
        local = _local_min_poly(F, A, v)
        mu = polys.lcm(F, mu, local)
        if polys.deg(mu) == n:
            break
    return mu


def _local_min_poly(F: FieldCtx, A: np.ndarray, v: np.ndarray) -> list[int]:
    n = A.shape[0]
    # echelonized Krylov basis with coordinates of each vector in terms of
    # powers A^j v
    basis_rows: list[np.ndarray] = []
    piv: list[int] = []
    coords: list[np.ndarray] = []
    cur = v.copy()
    j = 0
    while True:
        w = cur.copy()
        cw = zeros(1, n + 1).ravel()
        cw[j] = 1
        for br, p, cc in zip(basis_rows, piv, coords):
            if w[p]:
                f = int(w[p])
                w ^= F.vscale(f, br)
                cw ^= F.vscale(f, cc)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            poly = [int(c) for c in cw[: j + 1]]
            return poly if poly else [1]
        p = int(nz[0])
        s = F.inv(int(w[p]))
        basis_rows.append(F.vscale(s, w))
        coords.append(F.vscale(s, cw))
        piv.append(p)
        cur = mat_vec(F, A, cur)
        j += 1
        if j > n:
            raise AssertionError("Krylov overflow")


class Subspace:
    """Row-space with canonical rref basis."""

    def __init__(self, F: FieldCtx, ambient: int, vectors: np.ndarray | None):
        self.F = F
        self.ambient = ambient
        if vectors is None or np.asarray(vectors).size == 0:
            self.basis = zeros(0, ambient)
        else:
            vv = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient)
            self.basis = row_space(F, vv)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: np.ndarray) -> bool:
        if self.dim == 0:
            return not np.asarray(v).any()
        w = np.asarray(v, dtype=np.int64).copy().ravel()
        for row in self.basis:
            p = int(np.nonzero(row)[0][0])
            if w[p]:
                w ^= self.F.vscale(int(w[p]), row)
        return not w.any()

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace(
            self.F, self.ambient, np.concatenate([self.basis, other.basis], axis=0)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus block trick
        F, n = self.F, self.ambient
        U, W = self.basis, other.basis
        if U.shape[0] == 0 or W.shape[0] == 0:
            return Subspace(F, n, None)
        top = np.concatenate([U, U], axis=1)
        bot = np.concatenate([W, zeros(W.shape[0], n)], axis=1)
        R, pivots, _ = rref(F, np.concatenate([top, bot], axis=0))
        rows = []
        for r, c in enumerate(pivots):
            if c >= n:
                rows.append(R[r, n:])
        # also rows beyond pivot count are zero; rows with pivot in right half
        return Subspace(F, n, np.array(rows) if rows else None)

    def complement_basis(self) -> np.ndarray:
        """Rows completing the basis to the full ambient space."""
        stacked = np.concatenate([self.basis, eye(self.ambient)], axis=0)
        R, pivots, _ = rref(self.F, stacked)
        # pivots of rref of stacked = full space; take identity rows whose
        # index extends the subspace
        out = []
        have = Subspace(self.F, self.ambient, self.basis)
        for i in range(self.ambient):
            e = zeros(1, self.ambient).ravel()
            e[i] = 1
            if not have.contains(e):
                out.append(e)
                have = have.add(Subspace(self.F, self.ambient, e.reshape(1, -1)))
        return np.array(out) if out else zeros(0, self.ambient)

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v in the canonical basis (v must lie in the space)."""
        x, cert = solve(self.F, self.basis.T, v)
        if x is None:
            raise ValueError("vector not in subspace")
        return x

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    def __hash__(self):
        return hash((self.ambient, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


class Echelon:
    """Incrementally maintained row-echelon basis (for spinning etc.)."""

    def __init__(self, F: FieldCtx, ambient: int):
        self.F = F
        self.ambient = ambient
        self.rows: list[np.ndarray] = []
        self.pivs: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        w = np.asarray(v, dtype=np.int64).copy().ravel()
        for row, p in zip(self.rows, self.pivs):
            if w[p]:
                w ^= self.F.vscale(int(w[p]), row)
        return w

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def insert(self, v: np.ndarray) -> bool:
        """Add v to the span; returns True when the dimension grew."""
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        self.rows.append(self.F.vscale(self.F.inv(int(w[p])), w))
        self.pivs.append(p)
        return True

    def subspace(self) -> Subspace:
        if not self.rows:
            return Subspace(self.F, self.ambient, None)
        return Subspace(self.F, self.ambient, np.array(self.rows))


def reduce_mod(F: FieldCtx, S: Subspace, vecs: np.ndarray) -> np.ndarray:
    """Canonical representatives of the given row vectors modulo S."""
    vecs = np.atleast_2d(np.asarray(vecs, dtype=np.int64))
    if S.dim == 0:
        return vecs.copy()
    pivots = [int(np.nonzero(r)[0][0]) for r in S.basis]
    coeff = vecs[:, pivots]
    return vecs ^ mat_mul(F, coeff, S.basis)


def pivot_complement(S: Subspace) -> np.ndarray:
    """Unit vectors at the non-pivot columns of S's rref basis.

    The canonical-representative map v -> v mod S lands exactly in the span
    of these vectors, so they are the right complement for quotient
    coordinates.
    """
    pivots = {int(np.nonzero(r)[0][0]) for r in S.basis}
    out = []
    for i in range(S.ambient):
        if i not in pivots:
            e = zeros(1, S.ambient).ravel()
            e[i] = 1
            out.append(e)
    return np.array(out) if out else zeros(0, S.ambient)


def full_space(F: FieldCtx, n: int) -> Subspace:
    return Subspace(F, n, eye(n))


def col_space(F: FieldCtx, A: np.ndarray) -> Subspace:
    return Subspace(F, A.shape[0], A.T)


def kron(F: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with field multiplication."""
    a0, a1 = A.shape
    b0, b1 = B.shape
    out = F.vmul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(a0 * b0, a1 * b1)
