import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stablehom.errors import ShapeMismatch
from stablehom.linalg import GF, QQ, DEFAULT_PRIME, LinearSolver, Matrix, kernel_basis, solve

F = GF(DEFAULT_PRIME)
F5 = GF(5)


def test_prime_field_rejects_non_primes():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        GF(1)


@given(st.integers(0, DEFAULT_PRIME - 1), st.integers(0, DEFAULT_PRIME - 1))
def test_field_addition_is_exact(a, b):
    assert F.sub(F.add(a, b), b) == a % DEFAULT_PRIME


@given(
    st.integers(0, DEFAULT_PRIME - 1),
    st.integers(0, DEFAULT_PRIME - 1),
    st.integers(0, DEFAULT_PRIME - 1),
)
def test_field_axioms(a, b, c):
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a % DEFAULT_PRIME != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_axioms(a, b, c):
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.sub(QQ.add(a, b), b) == a


def test_kernel_of_identity_is_empty():
    K = kernel_basis(Matrix.identity(F, 3))
    assert K.cols == 0 and K.rows == 3


def test_kernel_of_zero_map_is_everything():
    K = kernel_basis(Matrix.zero(F, 2, 3))
    assert K.cols == 3
    assert K.rank() == 3


def test_kernel_of_rank_one_square():
    # [[1,1],[1,1]]: kernel spanned by (1, -1)
    M = Matrix.from_rows(F, [[1, 1], [1, 1]])
    K = kernel_basis(M)
    assert K.cols == 1
    v = K.col(0)
    assert M.apply(v) == [0, 0]
    # proportional to (1, -1)
    assert F.add(v[0], v[1]) == 0 and v[0] != 0


def test_solve_identity():
    M = Matrix.identity(F, 3)
    assert solve(M, [5, 7, 9]) == [5, 7, 9]


def test_solve_unreachable_target():
    M = Matrix.from_rows(F, [[1, 0], [0, 0]])
    assert solve(M, [0, 1]) is None


def test_solve_scalar_mod_five():
    # 2 x = 1 over F_5: x = 3
    M = Matrix.from_rows(F5, [[2]])
    assert solve(M, [1]) == [3]


def test_solve_dimension_mismatch():
    with pytest.raises(ShapeMismatch):
        solve(Matrix.identity(F, 2), [1, 2, 3])


@pytest.mark.parametrize("field", [F, QQ, F5])
@pytest.mark.parametrize("shape", [(3, 3), (2, 5), (5, 2), (4, 4), (0, 3), (3, 0)])
def test_rank_nullity(field, shape):
    rng = random.Random(hash(shape) & 0xFFFF)
    for _ in range(10):
        M = Matrix.random(field, shape[0], shape[1], rng)
        K = M.kernel_basis()
        assert M.rank() + K.cols == M.cols
        for j in range(K.cols):
            assert all(field.is_zero(x) for x in M.apply(K.col(j)))
        # kernel basis columns are independent
        assert K.rank() == K.cols


@pytest.mark.parametrize("field", [F, QQ])
def test_solve_roundtrip_on_random_systems(field):
    rng = random.Random(7)
    for _ in range(20):
        M = Matrix.random(field, rng.randrange(1, 5), rng.randrange(1, 5), rng)
        x = [field.random(rng) for _ in range(M.cols)]
        b = M.apply(x)
        y = M.solve(b)
        assert y is not None
        assert M.apply(y) == b


def test_linear_solver_reuse_and_containment():
    M = Matrix.from_rows(F, [[1, 2], [2, 4], [0, 1]])
    s = LinearSolver(M)
    assert s.contains(M.apply([3, 4]))
    assert not s.contains([1, 2, 0]) or M.solve([1, 2, 0]) is not None


def test_inverse():
    M = Matrix.from_rows(F5, [[1, 2], [3, 4]])
    Minv = M.inverse()
    assert Minv is not None
    assert M.mul(Minv) == Matrix.identity(F5, 2)
    assert Matrix.from_rows(F5, [[1, 2], [2, 4]]).inverse() is None


def test_kron_index_convention():
    A = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    B = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    K = A.kron(B)
    # block (i, j) of K is A[i][j] * B
    assert K.entry(0, 1) == Fraction(1)
    assert K.entry(0, 3) == Fraction(2)
    assert K.entry(2, 1) == Fraction(3)


def test_rref_and_image_basis():
    M = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = M.rref()
    assert pivots == [0, 1]
    I = M.image_basis()
    assert I.cols == 2
    # image basis columns are original matrix columns
    assert I.col(0) == M.col(0)
