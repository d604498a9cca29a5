from __future__ import annotations

import numpy as np
import pytest

from fdrm.errors import FieldMismatchError, ParseError
from fdrm.field import gf
from fdrm.linalg import Mat, hstack, rank_distance, vstack
from tests.oracles import OracleField, naive_rank

FIELDS = [(2, OracleField(2, 2)), (3, OracleField(3, 3)), (4, OracleField(2, 7)), (9, OracleField(3, 10))]


@pytest.mark.parametrize("q,oracle", FIELDS)
def test_rank_matches_oracle(q, oracle):
    F = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        r, c = rng.integers(1, 6, size=2)
        A = rng.integers(0, q, size=(r, c))
        if rng.random() < 0.5 and r > 1:
            A[-1] = A[0]
        assert Mat(F, A).rank() == naive_rank(A.tolist(), oracle)


def test_rank_distance_example():
    F = gf(2)
    assert rank_distance(Mat.identity(F, 2), Mat(F, [[0, 1], [1, 0]])) == 1


def test_row_reduce_certificate():
    F = gf(5)
    A = Mat(F, [[1, 2, 3, 4], [2, 4, 1, 1], [3, 1, 4, 0]])
    R, T, pivots = A.row_reduce()
    assert T @ A == R
    assert T.rank() == 3
    for i, c in enumerate(pivots):
        assert R.column(c) == [int(j == i) for j in range(3)]


def test_inverse_and_solve():
    F = gf(4)
    A = Mat(F, [[1, 2, 0], [0, 1, 3], [2, 0, 1]])
    Ainv = A.inverse()
    assert A @ Ainv == Mat.identity(F, 3)
    x = A.solve([1, 2, 3])
    assert (A @ Mat.from_columns(F, [x])).column(0) == [1, 2, 3]
    S = Mat(F, [[1, 1], [1, 1]])
    assert S.solve([1, 0]) is None
    assert S.solve([1, 1]) == [1, 0]  # free variable set to zero
    with pytest.raises(ZeroDivisionError):
        S.inverse()


def test_arithmetic_and_shape_checks():
    F = gf(3)
    A = Mat(F, [[1, 2], [0, 1]])
    assert A + (-A) == Mat.zeros(F, 2, 2)
    assert (A - A).is_zero()
    assert A.scale(2) == A + A
    assert hstack([A, A]).shape == (2, 4)
    assert vstack([A, A]).shape == (4, 2)
    with pytest.raises(FieldMismatchError):
        A + Mat(gf(5), [[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        A @ Mat.zeros(F, 3, 1)
    with pytest.raises(ValueError):
        Mat(F, [[3]])


def test_matrices_are_immutable_values():
    F = gf(2)
    A = Mat(F, [[1, 0], [1, 1]])
    with pytest.raises(ValueError):
        A.data[0, 0] = 0
    assert hash(A) == hash(Mat(F, [[1, 0], [1, 1]]))


def test_text_round_trip():
    for F in [gf(2), gf(4), gf(2, 3)]:
        A = Mat(F, np.arange(12).reshape(3, 4) % F.order)
        assert Mat.from_text(A.to_text()) == A
        assert Mat.from_text(A.to_text(header=False), F) == A


def test_parse_errors_carry_line_numbers():
    F = gf(2)
    with pytest.raises(ParseError, match="line 3: matrix truncated"):
        Mat.from_text("field: GF(2^1)/mod=2\nshape: 3 2\n1 0\n", F)
    with pytest.raises(ParseError, match="line 3"):
        Mat.from_text("field: GF(2^1)/mod=2\nshape: 2 2\n1 x\n0 1\n")
    with pytest.raises(ParseError, match="line 4"):
        Mat.from_text("field: GF(2^1)/mod=2\nshape: 2 2\n1 0\n0 1 1\n")
    with pytest.raises(ParseError, match="outside"):
        Mat.from_text("field: GF(2^1)/mod=2\nshape: 1 1\n2\n")
    with pytest.raises(ParseError, match="missing field"):
        Mat.from_text("shape: 1 1\n1\n")
