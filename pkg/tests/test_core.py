"""Tests for the exact circle and torus primitives."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from runnerspec.core import (
    ZeroVector,
    circle_distance,
    dot,
    format_rational,
    linf_center_distance,
    norm_sq,
    parse_rational,
    primitive_part,
    torus_point,
)

F = Fraction

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


def test_parse_format_round_trip():
    assert parse_rational("7/50") == F(7, 50)
    assert parse_rational(" 3 ") == 3
    assert parse_rational("-1/6") == F(-1, 6)
    assert format_rational(F(7, 50)) == "7/50"
    assert format_rational(3) == "3"
    assert format_rational(F(4, 2)) == "2"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("three halves")


@pytest.mark.parametrize(
    "x, expected",
    [
        (0, F(0)),
        (F(1, 2), F(1, 2)),
        (F(3, 4), F(1, 4)),
        (F(-1, 4), F(1, 4)),
        (F(7, 3), F(1, 3)),
        (5, F(0)),
    ],
)
def test_circle_distance_values(x, expected):
    assert circle_distance(x) == expected


@given(rationals)
def test_circle_distance_range_and_symmetry(x):
    d = circle_distance(x)
    assert 0 <= d <= F(1, 2)
    assert circle_distance(-x) == d
    assert circle_distance(x + 1) == d


@given(rationals, rationals)
def test_circle_distance_triangle(x, y):
    assert circle_distance(x + y) <= circle_distance(x) + circle_distance(y)


def test_torus_point_wraps():
    assert torus_point([F(3, 2), F(-1, 4), 2]) == (F(1, 2), F(3, 4), F(0))


def test_linf_center_distance_values():
    assert linf_center_distance((0, 0)) == F(1, 2)
    assert linf_center_distance((F(1, 2), F(1, 2))) == 0
    assert linf_center_distance((F(1, 4), F(1, 2))) == F(1, 4)
    with pytest.raises(ValueError):
        linf_center_distance(())


@given(st.lists(rationals, min_size=1, max_size=4))
def test_linf_center_distance_range(coords):
    d = linf_center_distance(coords)
    assert 0 <= d <= F(1, 2)


def test_primitive_part():
    assert primitive_part((2, 4)) == (1, 2)
    assert primitive_part((-2, 4)) == (1, -2)
    assert primitive_part((0, -3, 6)) == (0, 1, -2)
    assert primitive_part((5,)) == (1,)
    with pytest.raises(ZeroVector):
        primitive_part((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=4))
def test_primitive_part_idempotent(vec):
    if all(c == 0 for c in vec):
        return
    p = primitive_part(vec)
    assert primitive_part(p) == p
    assert next(c for c in p if c != 0) > 0


def test_dot_and_norm():
    assert dot((1, 2, 3), (4, 5, 6)) == 32
    assert norm_sq((1, 2, 3)) == 14
    with pytest.raises(ValueError):
        dot((1, 2), (1, 2, 3))
