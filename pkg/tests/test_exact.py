from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from intersect_lab.exact import (format_rational, kernel, parse_rational, primitive_integer_vector,
                                 rank, rref, solve, transpose)

rats = st.builds(F, st.integers(-1000, 1000), st.integers(1, 50))


def test_parse_and_format():
    assert parse_rational("-3/6") == F(-1, 2)
    assert parse_rational(" 7 ") == F(7)
    assert format_rational(F(-11, 12)) == "-11/12"
    assert format_rational(F(4, 2)) == "2"
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5")


@given(rats)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_rref_pivots_left_to_right():
    red, piv = rref([[0, 2, 4], [1, 1, 1], [1, 3, 5]], 3)
    assert piv == [0, 1]
    assert red == [[1, 0, -1], [0, 1, 2]]


def test_kernel_and_solve():
    rows = [[1, 2, 3], [2, 4, 6]]
    ker = kernel(rows, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(F(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    sol, rk = solve([[1, 1], [1, -1]], [3, 1], 2)
    assert sol == [2, 1] and rk == 2
    sol, rk = solve([[1, 1], [2, 2]], [1, 3], 2)
    assert sol is None


def test_transpose_and_primitive():
    assert transpose([[1, 2], [3, 4]]) == [[1, 3], [2, 4]]
    assert primitive_integer_vector([F(1, 2), F(-3, 4)]) == (2, -3)
    with pytest.raises(ZeroDivisionError):
        primitive_integer_vector([0, 0])


@given(st.lists(st.lists(rats, min_size=3, max_size=3), min_size=1, max_size=5))
def test_rank_nullity(rows):
    assert rank(rows, 3) + len(kernel(rows, 3)) == 3
