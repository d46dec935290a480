import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclocover.ffield import FieldTower, TowerMismatchError
from cyclocover.matrix import MatrixFq


def leibniz_det(A):
    """Oracle determinant by the permutation expansion."""
    m = A.dim
    F = A.tower
    total = F.zero()
    for perm in itertools.permutations(range(m)):
        sign = 1
        for i in range(m):
            for j in range(i + 1, m):
                if perm[i] > perm[j]:
                    sign = -sign
        term = F(sign)
        for i in range(m):
            term = term * A.entry(i, perm[i])
        total = total + term
    return total


@st.composite
def matrices(draw):
    F = FieldTower(*draw(st.sampled_from([(2, 2), (3, 1), (5, 2), (7, 1), (2, 3)])))
    m = draw(st.integers(1, 4))
    data = tuple(draw(st.integers(0, F.size - 1)) for _ in range(m * m))
    return MatrixFq(F, m, data)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_det_matches_leibniz(A):
    assert A.det() == leibniz_det(A)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_inverse(A):
    if A.det().is_zero():
        with pytest.raises(ZeroDivisionError):
            A.inverse()
    else:
        assert (A @ A.inverse()).is_identity()
        assert (A.inverse() @ A).is_identity()


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_det_is_multiplicative(A, data):
    B = MatrixFq(A.tower, A.dim, tuple(data.draw(st.integers(0, A.tower.size - 1)) for _ in A.data))
    assert (A @ B).det() == A.det() * B.det()


def test_from_rows_and_diagonal():
    F = FieldTower(7, 1)
    A = MatrixFq.from_rows(F, [[1, 2], [3, 4]])
    assert A.det() == F(4 - 6)
    D = MatrixFq.diagonal([F(2), F(3)])
    assert D.det() == 6
    assert (D**3).entry(0, 0) == 8


def test_star_is_conjugate_transpose():
    F = FieldTower(2, 2)
    w = F.gen()
    A = MatrixFq.from_rows(F, [[w, 1], [0, w + 1]])
    S = A.star(1)
    assert S.entry(0, 0) == w * w
    assert S.entry(1, 0) == 1 and S.entry(0, 1) == 0


def test_mixed_towers_rejected():
    A = MatrixFq.identity(FieldTower(2, 2), 2)
    B = MatrixFq.identity(FieldTower(2, 4), 2)
    with pytest.raises(TowerMismatchError):
        A @ B
