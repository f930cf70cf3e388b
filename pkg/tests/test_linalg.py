"""Exact linear algebra over GF(2^m)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symvert import linalg, polys
from symvert.field import make_field

F2 = make_field(1)
F4 = make_field(2)


def matrices(F, rows, cols):
    return st.lists(
        st.lists(st.integers(0, F.q - 1), min_size=cols, max_size=cols),
        min_size=rows,
        max_size=rows,
    ).map(lambda m: np.array(m, dtype=np.int64))


@given(matrices(F4, 3, 3), matrices(F4, 3, 3), matrices(F4, 3, 3))
def test_mat_mul_associative_distributive(A, B, C):
    assert (
        linalg.mat_mul(F4, linalg.mat_mul(F4, A, B), C)
        == linalg.mat_mul(F4, A, linalg.mat_mul(F4, B, C))
    ).all()
    assert (
        linalg.mat_mul(F4, A, B ^ C)
        == linalg.mat_mul(F4, A, B) ^ linalg.mat_mul(F4, A, C)
    ).all()


@given(matrices(F2, 4, 6))
def test_rref_rank_kernel_dims(A):
    r = linalg.rank(F2, A)
    K = linalg.kernel(F2, A)
    assert r + len(K) == A.shape[1]  # rank-nullity
    if len(K):
        assert not linalg.mat_mul(F2, A, K.T).any()
        assert linalg.rank(F2, K) == len(K)


@given(matrices(F4, 4, 4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_solve_consistency(A, x):
    x = np.array(x, dtype=np.int64)
    b = linalg.mat_vec(F4, A, x)
    sol, _ = linalg.solve(F4, A, b)
    assert sol is not None
    assert (linalg.mat_vec(F4, A, sol) == b).all()


@given(matrices(F4, 4, 4))
def test_inverse_round_trip(A):
    if not linalg.is_invertible(F4, A):
        return
    Ai = linalg.inverse(F4, A)
    assert (linalg.mat_mul(F4, A, Ai) == linalg.eye(4)).all()
    assert (linalg.mat_mul(F4, Ai, A) == linalg.eye(4)).all()


@given(matrices(F2, 5, 5))
def test_min_poly_annihilates(A):
    mu = linalg.min_poly(F2, A)
    assert not polys.eval_matrix(F2, mu, A).any()
    assert mu[-1] == 1  # monic
    # minimality: no proper divisor annihilates
    for f, _ in polys.factor(F2, mu):
        q, r = polys.divmod_(F2, mu, f)
        assert r == []
        if polys.deg(q) >= 1 or q != [1]:
            if polys.eval_matrix(F2, q, A).any():
                continue
            pytest.fail("min_poly not minimal")


def test_is_nilpotent():
    N = np.array([[0, 1], [0, 0]], dtype=np.int64)
    assert linalg.is_nilpotent(F2, N)
    assert not linalg.is_nilpotent(F2, linalg.eye(2))
    # unipotent is not nilpotent
    assert not linalg.is_nilpotent(F2, N ^ linalg.eye(2))


@given(matrices(F2, 3, 8))
def test_subspace_membership_and_complement(A):
    S = linalg.Subspace(F2, 8, A)
    for row in A:
        assert S.contains(row)
    C = S.complement_basis()
    assert len(C) + S.dim == 8
    T = linalg.Subspace(F2, 8, np.vstack([S.basis, C]) if S.dim else C)
    assert T.dim == 8


@given(matrices(F2, 3, 6), matrices(F2, 3, 6))
def test_subspace_sum_intersection_dims(A, B):
    S, T = linalg.Subspace(F2, 6, A), linalg.Subspace(F2, 6, B)
    # modular law of dimensions
    assert S.add(T).dim + S.intersect(T).dim == S.dim + T.dim
    assert S.add(T).contains_space(S)
    assert S.contains_space(S.intersect(T))


def test_subspace_coords():
    S = linalg.Subspace(F4, 3, np.array([[1, 2, 0], [0, 0, 1]], dtype=np.int64))
    v = np.array([2, 3, 1], dtype=np.int64)  # 2*(1,2,0) + 1*(0,0,1)
    c = S.coords(v)
    back = np.zeros(3, dtype=np.int64)
    for ci, bi in zip(c, S.basis):
        back ^= F4.vscale(int(ci), bi)
    assert (back == v).all()


def test_echelon_incremental():
    E = linalg.Echelon(F2, 4)
    assert E.insert(np.array([1, 1, 0, 0]))
    assert E.insert(np.array([0, 1, 1, 0]))
    assert not E.insert(np.array([1, 0, 1, 0]))  # dependent
    assert E.dim == 2
    assert E.contains(np.array([1, 0, 1, 0]))
    assert not E.contains(np.array([0, 0, 0, 1]))


def test_kernel_gf2_stream_matches_dense():
    rng = np.random.default_rng(5)
    A = rng.integers(0, 2, size=(10, 17)).astype(np.int64)
    dense = linalg.kernel(F2, A)
    ints = [int("".join(str(b) for b in row[::-1]), 2) for row in A]
    stream = linalg.kernel_gf2_stream(iter(ints), 17)
    assert len(dense) == len(stream)
    assert not linalg.mat_mul(F2, A, stream.T).any()
    assert linalg.rank(F2, stream) == len(stream)


@given(matrices(F4, 2, 2), matrices(F4, 2, 2), matrices(F4, 2, 2), matrices(F4, 2, 2))
def test_kron_mixed_product(A, B, C, D):
    left = linalg.mat_mul(
        F4, linalg.kron(F4, A, B), linalg.kron(F4, C, D)
    )
    right = linalg.kron(
        F4, linalg.mat_mul(F4, A, C), linalg.mat_mul(F4, B, D)
    )
    assert (left == right).all()


def test_pivot_complement():
    S = linalg.Subspace(F2, 4, np.array([[1, 1, 0, 0], [0, 0, 1, 1]], dtype=np.int64))
    C = linalg.pivot_complement(S)
    assert C.shape == (2, 4)
    whole = linalg.Subspace(F2, 4, np.vstack([S.basis, C]))
    assert whole.dim == 4


@settings(max_examples=30)
@given(st.integers(0, 2**30 - 1))
def test_solve_certificate_on_inconsistent_system(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 2, size=(4, 3)).astype(np.int64)
    b = rng.integers(0, 2, size=4).astype(np.int64)
    sol, cert = linalg.solve(F2, A, b, certificate=True)
    if sol is not None:
        assert (linalg.mat_vec(F2, A, sol) == b).all()
        assert cert is None
    else:
        # Fredholm certificate: y A = 0 but y.b != 0
        assert cert is not None
        assert not linalg.vec_mat(F2, cert, A).any()
        assert int(np.bitwise_xor.reduce(F2.vmul(cert, b))) != 0
