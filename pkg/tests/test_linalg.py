import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _oracles import brute_rank
from orbdiam.gf import field_of_order
from orbdiam.linalg import (
    DimensionError,
    FUNCTORS,
    Mat,
    SpaceCapError,
    Vec,
    apply_to_vector,
    check_space,
    determinant,
    from_ints,
    functor_rep,
    identity,
    index_to_vec,
    inverse,
    is_invertible,
    make_model,
    mat_mul,
    matrix_rank,
    transpose,
    vec_index,
)

FIELDS = [2, 3, 4, 5, 8, 9]


def random_mat(F, n, rng, invertible=False):
    while True:
        M = Mat(F, rng.integers(0, F.q, (n, n)))
        if not invertible or is_invertible(M):
            return M


@given(st.sampled_from(FIELDS), st.integers(1, 4), st.integers(0, 10**6))
def test_rank_matches_span_count(q, n, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, q, (min(n, 3), n))
    assert matrix_rank(Mat(F, A)) == brute_rank(F, A)


@given(st.sampled_from(FIELDS), st.integers(1, 4), st.integers(0, 10**6))
def test_inverse_and_determinant_multiplicative(q, n, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    A, B = random_mat(F, n, rng, True), random_mat(F, n, rng)
    assert mat_mul(A, inverse(A)) == identity(F, n)
    assert determinant(mat_mul(A, B)) == F.mul(determinant(A), determinant(B))
    assert transpose(transpose(B)) == B


def test_determinant_by_leibniz_formula():
    F = field_of_order(5)
    rng = np.random.default_rng(1)
    for _ in range(20):
        A = rng.integers(0, 5, (3, 3))
        total = 0
        for perm in itertools.permutations(range(3)):
            sign = np.linalg.det(np.eye(3)[list(perm)])
            total += round(sign) * A[0, perm[0]] * A[1, perm[1]] * A[2, perm[2]]
        assert determinant(Mat(F, A)) == total % 5


def test_singular_inverse_raises():
    F = field_of_order(3)
    with pytest.raises(ZeroDivisionError):
        inverse(from_ints(F, [[1, 2], [2, 4]]))


def test_vector_action_and_shapes():
    F = field_of_order(4)
    g = Mat(F, np.array([[0, 1], [1, 0]]))
    assert apply_to_vector(Vec(F, np.array([2, 3])), g) == Vec(F, np.array([3, 2]))
    with pytest.raises(DimensionError):
        mat_mul(g, Mat(F, np.eye(3, dtype=np.int64)))


def test_index_roundtrip_little_endian():
    F = field_of_order(3)
    v = index_to_vec(F, 3, 5)  # 5 = 2 + 1*3
    assert v.coords.tolist() == [2, 1, 0]
    assert vec_index(F, 3, v) == 5


def test_space_cap():
    F = field_of_order(2)
    assert check_space(F, 10, 2**10) == 1024
    with pytest.raises(SpaceCapError):
        check_space(F, 11, 2**10)
    with pytest.raises(SpaceCapError):
        check_space(field_of_order(256), 8, None)


CASES = [("ext2", 2, 4), ("ext2", 3, 3), ("sym2", 3, 3), ("sym2", 5, 2), ("ext3", 2, 4),
         ("adjoint", 3, 3), ("adjoint", 2, 2), ("adjoint", 5, 3), ("tensor", 3, 2),
         ("twisted_tensor_k2", 4, 2), ("twisted_tensor_k2", 9, 2)]


@pytest.mark.parametrize("functor,q,m", CASES)
def test_functors_are_homomorphisms(functor, q, m):
    F = field_of_order(q)
    rng = np.random.default_rng(q * 31 + m)
    for _ in range(4):
        a, b = random_mat(F, m, rng, True), random_mat(F, m, rng, True)
        ga, gb, gab = functor_rep([a, b, mat_mul(a, b)], functor)
        assert mat_mul(ga, gb) == gab


@pytest.mark.parametrize("functor,q,m", [c for c in CASES if c[0] not in ("ext3", "tensor")])
def test_model_coordinates_roundtrip(functor, q, m):
    F = field_of_order(q)
    model = make_model(functor, F, m)
    rng = np.random.default_rng(7)
    for _ in range(10):
        c = rng.integers(0, model.field.q, model.dim)
        assert np.array_equal(model.from_matrix(model.to_matrix(c)), c)


def test_functor_dimensions():
    F = field_of_order(2)
    g = [identity(F, 5)]
    assert functor_rep(g, "ext2")[0].rows == 10
    assert functor_rep(g, "ext3")[0].rows == 10
    assert functor_rep(g, "adjoint")[0].rows == 24
    assert functor_rep([identity(F, 4)], "adjoint")[0].rows == 14  # p | 4: quotient by scalars
    assert functor_rep([identity(field_of_order(4), 3)], "twisted_tensor_k2")[0].rows == 9
    with pytest.raises(ValueError):
        functor_rep(g, "nonsense")
    with pytest.raises(Exception):
        functor_rep(g, "sym2")  # characteristic 2
