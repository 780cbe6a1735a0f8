import pytest

from bezred import ElementaryOp, Matrix, Zmod, apply_op, determinant, replay, swap_as_transvections
from bezred.matrix import diag_matrix

from conftest import Z


def M(rows, ring=Z):
    return Matrix.of(ring, rows)


def test_transvection_left():
    # 1-based (2, 1) in the usual notation is (1, 0) here
    assert apply_op(Matrix.identity(Z, 2), ElementaryOp(1, 0, 5)) == M([[1, 0], [5, 1]])
    assert apply_op(M([[1, 0], [5, 1]]), ElementaryOp(1, 0, -5)).is_identity()
    assert apply_op(M([[2, 4], [6, 8]]), ElementaryOp(1, 0, -3)) == M([[2, 4], [0, -4]])


def test_transvection_right():
    assert apply_op(M([[2, 4], [6, 8]]), ElementaryOp(1, 0, -2, side="right")) == M([[2, 0], [6, -4]])


def test_op_validation():
    with pytest.raises(ValueError):
        ElementaryOp(0, 0, 1)
    with pytest.raises(IndexError):
        apply_op(Matrix.identity(Z, 2), ElementaryOp(0, 2, 1))


def test_inverse_op():
    op = ElementaryOp(0, 2, 7)
    A = M([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert apply_op(apply_op(A, op), op.inverse(Z)) == A


def test_swap_identity():
    assert replay(Z, 2, swap_as_transvections(Z, 2, 0, 1)) == M([[0, -1], [1, 0]])
    R = Zmod(6)
    assert replay(R, 2, swap_as_transvections(R, 2, 0, 1)) == M([[0, 5], [1, 0]], R)
    assert replay(Z, 3, swap_as_transvections(Z, 3, 1, 2)) == M([[1, 0, 0], [0, 0, -1], [0, 1, 0]])
    with pytest.raises(IndexError):
        swap_as_transvections(Z, 2, 0, 2)


def test_matmul_and_determinant():
    A = M([[1, 2], [3, 4]])
    assert A @ Matrix.identity(Z, 2) == A
    assert A @ A == M([[7, 10], [15, 22]])
    assert determinant(A) == -2
    assert determinant(M([[2, 0, 1], [1, 3, 2], [1, 1, 2]])) == 6
    assert determinant(M([[2, 3], [4, 1]], Zmod(6))) == 2
    with pytest.raises(ValueError):
        M([[1, 2]]) @ M([[1, 2]])


def test_diag_matrix():
    assert diag_matrix(Z, 2, 3, (2, 6)) == M([[2, 0, 0], [0, 6, 0]])
