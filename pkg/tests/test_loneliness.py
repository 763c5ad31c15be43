"""Tests for the maximum-loneliness engine and its companion distances."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from runnerspec.core import circle_distance
from runnerspec.loneliness import (
    InvalidNormal,
    InvalidSpeeds,
    SpeedTuple,
    _scan_best_numpy,
    _scan_best_python,
    d_hyperplane,
    d_min_max,
    d_subtorus1,
    max_loneliness,
    maximizing_times,
)

from oracles import grid_ml, grid_ml_witness, pair_distance

F = Fraction

speed_lists = st.lists(st.integers(1, 30), min_size=1, max_size=3)


def primitive(speeds):
    g = 0
    for s in speeds:
        g = gcd(g, s)
    return g == 1


# --- construction ---------------------------------------------------------


def test_speed_tuple_normalizes_signs():
    st_ = SpeedTuple((-2, 3))
    assert st_.speeds == (2, 3)
    assert st_.canonical_form == (2, 3)
    assert SpeedTuple((3, -2, 1)).canonical_form == (1, 2, 3)


def test_speed_tuple_rejects_bad_input():
    with pytest.raises(InvalidSpeeds):
        SpeedTuple(())
    with pytest.raises(InvalidSpeeds):
        SpeedTuple((0, 1))
    with pytest.raises(InvalidSpeeds):
        SpeedTuple((2, 4))


def test_speed_tuple_volume():
    assert SpeedTuple((1, 2, 3)).volume_sq == 14
    assert SpeedTuple((1, 2, 3)).dimension == 3


# --- exact values ---------------------------------------------------------


@pytest.mark.parametrize(
    "speeds, ml, witness",
    [
        ((1,), F(1, 2), F(1, 2)),
        ((1, 2), F(1, 3), F(1, 3)),
        ((2, 3), F(2, 5), F(1, 5)),
        ((1, 2, 3), F(1, 4), F(1, 4)),
    ],
)
def test_max_loneliness_known_values(speeds, ml, witness):
    res = max_loneliness(speeds)
    assert res.ml == ml
    assert res.witness_time == witness
    assert res.d_value == F(1, 2) - ml


def test_max_loneliness_four_runner_family():
    assert max_loneliness((8, 3, 11, 19)).ml == F(7, 30)


@pytest.mark.parametrize(
    "speeds, d",
    [((1, 2), F(1, 6)), ((1, 3), F(0)), ((1, 2, 2), F(1, 6))],
)
def test_d_subtorus1_values(speeds, d):
    assert d_subtorus1(speeds) == d


def test_witness_is_earliest_maximizer():
    for speeds in ((1, 2), (2, 3), (1, 2, 3), (3, 4, 5)):
        res = max_loneliness(speeds)
        times = maximizing_times(speeds)
        assert res.witness_time == min(times)
        for t in times:
            assert min(circle_distance(t * s) for s in speeds) == res.ml
        assert grid_ml_witness(speeds) == (res.ml, res.witness_time)


# --- oracle agreement -----------------------------------------------------


def test_grid_oracle_spot_checks():
    for speeds in ((1, 2), (1, 5), (2, 3, 7), (4, 6, 9), (5, 8, 11), (1, 10, 12)):
        assert max_loneliness(speeds).ml == grid_ml(speeds)


def test_numpy_and_python_scans_agree():
    for speeds in ((1, 2), (2, 3, 7), (5, 8, 11), (97, 998, 1001)):
        assert _scan_best_numpy(speeds) == _scan_best_python(speeds)


def test_n2_closed_form_identity():
    # d of a coprime pair is 0 for even sum, else 1/(2(a+b)); the same
    # value comes back through the hyperplane normal (b, -a).
    for a in range(1, 40):
        for b in range(a, 41):
            if gcd(a, b) != 1:
                continue
            d = d_subtorus1((a, b))
            assert d == pair_distance(a, b)
            assert d == d_hyperplane((b, -a))


# --- properties -----------------------------------------------------------


@given(speed_lists)
@settings(max_examples=60)
def test_ml_bounds_and_witness(speeds):
    assume(primitive(speeds))
    res = max_loneliness(speeds)
    n = len(set(speeds))
    assert F(1, n + 1) <= res.ml <= F(1, 2)
    assert min(circle_distance(res.witness_time * s) for s in speeds) == res.ml
    assert 0 <= res.witness_time < 1


@given(speed_lists, st.integers(1, 30))
@settings(max_examples=40)
def test_ml_never_grows_with_more_speeds(speeds, extra):
    assume(primitive(speeds))
    assert max_loneliness(tuple(speeds) + (extra,)).ml <= max_loneliness(speeds).ml


@given(st.permutations([1, 4, 9]), st.tuples(*[st.sampled_from([-1, 1])] * 3))
def test_ml_invariant_under_isometries(perm, signs):
    base = max_loneliness((1, 4, 9)).ml
    assert max_loneliness(tuple(p * s for p, s in zip(perm, signs))).ml == base


@given(speed_lists)
@settings(max_examples=40)
def test_duplicates_do_not_change_ml(speeds):
    assume(primitive(speeds))
    doubled = tuple(speeds) + (speeds[0],)
    assert max_loneliness(doubled).ml == max_loneliness(speeds).ml


# --- shifted variant ------------------------------------------------------


def test_d_min_max_examples():
    assert d_min_max((1, 2), (0, 0)) == F(1, 6)
    assert d_min_max((1, 3), (0, 0)) == F(0)
    assert d_min_max((1,), (F(1, 2),)) == F(0)


@given(speed_lists)
@settings(max_examples=40)
def test_d_min_max_zero_shift_matches_engine(speeds):
    assume(primitive(speeds))
    zero = (F(0),) * len(speeds)
    assert d_min_max(speeds, zero) == d_subtorus1(speeds)


def test_d_min_max_validates_input():
    with pytest.raises(InvalidSpeeds):
        d_min_max((1, 2), (F(0),))
    with pytest.raises(InvalidSpeeds):
        d_min_max((2, 4), (F(0), F(0)))


# --- hyperplane closed form -----------------------------------------------


@pytest.mark.parametrize(
    "normal, d",
    [((2, -1), F(1, 6)), ((3, -2), F(1, 10)), ((3, -1), F(0)), ((1, 1, -1), F(1, 6))],
)
def test_d_hyperplane_values(normal, d):
    assert d_hyperplane(normal) == d


def test_d_hyperplane_rejects_bad_normals():
    for bad in ((0, 0), (2, 4), (0, 1), (3,)):
        with pytest.raises(InvalidNormal):
            d_hyperplane(bad)
