"""Tests for exact plane lattices, lifts, slices, and named constants."""

import math
import random
from fractions import Fraction
from math import gcd

import pytest

from runnerspec.core import UnsupportedDimension, primitive_part
from runnerspec.lattice import (
    DEFAULT_PI_BOUNDS,
    REFINED_PI_BOUNDS,
    BudgetExceeded,
    DegenerateBasis,
    NotContained,
    PiPower,
    ball_volume,
    basis_length_bound,
    certificate_profile,
    covolume_sq_2,
    d_subtorus2,
    dense_sequence,
    density_radius_sq,
    kronecker_lift,
    lift_volume_threshold,
    lrc_threshold,
    named_constants,
    saturate,
    shortest_projected_vector,
    slice_plane_to_line,
    threshold_below_power_bound,
    volume_sq_1,
)
from runnerspec.loneliness import d_hyperplane, d_subtorus1

from oracles import brute_shortest_projected

F = Fraction


# --- saturation -----------------------------------------------------------


def test_saturate_standard_plane():
    plane = saturate((1, 0, 0), (0, 1, 0))
    assert plane.basis_u == (1, 0, 0)
    assert plane.basis_v == (0, 1, 0)
    assert plane.covolume_sq == 1


def test_saturate_known_covolumes():
    assert covolume_sq_2(saturate((1, 1, 1), (0, 1, 2))) == 6
    assert covolume_sq_2(saturate((1, 2, 0), (0, 0, 1))) == 5
    assert covolume_sq_2(saturate((1, 0, 1), (0, 1, 1))) == 3


def test_saturate_divides_out_index():
    # (2,0,0),(0,3,0) generate an index-6 sublattice of the axis plane
    plane = saturate((2, 0, 0), (0, 3, 0))
    assert plane.covolume_sq == 1


def test_saturate_contains_inputs_and_is_idempotent():
    rng = random.Random(7)
    seen = 0
    while seen < 25:
        u = tuple(rng.randint(-4, 4) for _ in range(3))
        v = tuple(rng.randint(-4, 4) for _ in range(3))
        try:
            plane = saturate(u, v)
        except DegenerateBasis:
            continue
        seen += 1
        plane.coords_of(u)
        plane.coords_of(v)
        again = saturate(plane.basis_u, plane.basis_v)
        assert again == plane
        assert plane.coords_of(plane.basis_u) == (F(1), F(0))
        assert plane.coords_of(plane.basis_v) == (F(0), F(1))
        (a, b), (_, c) = plane.gram()
        assert plane.covolume_sq == a * c - b * b > 0


def test_saturate_rejects_degenerate():
    with pytest.raises(DegenerateBasis):
        saturate((1, 2, 3), (2, 4, 6))
    with pytest.raises(DegenerateBasis):
        saturate((1, 2), (1,))


def test_coords_of_raises_off_plane():
    plane = saturate((1, 0, 0), (0, 1, 0))
    with pytest.raises(NotContained):
        plane.coords_of((0, 0, 1))


def test_volume_sq_1():
    assert volume_sq_1((1, 2, 3)) == 14
    with pytest.raises(ValueError):
        volume_sq_1((2, 4))


# --- shortest projected vector --------------------------------------------


@pytest.mark.parametrize(
    "v, x, p_sq",
    [
        ((1, 0, 0), (0, 0, -1), F(1)),
        ((1, 2), (0, -1), F(1, 5)),
        ((1, 1), (0, -1), F(1, 2)),
        ((1, 2, 3), (0, -1, -1), F(3, 14)),
    ],
)
def test_shortest_projected_known(v, x, p_sq):
    assert shortest_projected_vector(v) == (x, p_sq)


def test_shortest_projected_matches_brute_force():
    vs = [(a, b) for a in range(1, 9) for b in range(a, 9) if gcd(a, b) == 1]
    vs += [(1, 1, 2), (1, 2, 3), (1, 3, 4), (2, 3, 5), (2, 2, 3), (1, 2, 4)]
    vs += [(1, 1, 1, 1), (1, 2, 3, 4)]
    for v in vs:
        x, p_sq = shortest_projected_vector(v)
        assert p_sq == brute_shortest_projected(v)
        # returned witness realizes its own value
        n = sum(c * c for c in v)
        d = sum(a * b for a, b in zip(x, v))
        assert F(n * sum(a * a for a in x) - d * d, n) == p_sq


def test_shortest_projected_unsupported_dimensions():
    with pytest.raises(UnsupportedDimension):
        shortest_projected_vector((1,))
    with pytest.raises(UnsupportedDimension):
        shortest_projected_vector((1, 1, 1, 1, 1))


def test_shortest_projected_deterministic():
    assert shortest_projected_vector((3, 5, 7)) == shortest_projected_vector((3, 5, 7))


# --- lifts and density certificates ---------------------------------------


def test_lift_line_slope_family():
    for j in range(1, 7):
        cert = kronecker_lift((1, j), F(1, 2))
        assert cert.outer_plane.covolume_sq == 1
        assert cert.delta_sq == F(1, 4 * (1 + j * j))


def test_lift_axis_direction():
    cert = kronecker_lift((1, 0, 0), F(1, 2))
    assert cert.delta_sq == F(1, 4)
    assert cert.guaranteed


def test_lift_guarantee_threshold():
    assert kronecker_lift((2, 3), F(1, 7)).guaranteed
    assert not kronecker_lift((2, 3), F(1, 8)).guaranteed


def test_lift_large_volume_is_guaranteed():
    # volume past the n=3 threshold at epsilon 1/25 forces density
    for v in ((1, 1, 199), (3, 7, 199), (60, 110, 191)):
        assert sum(c * c for c in v) > 39578
        assert kronecker_lift(v, F(1, 25)).guaranteed


def test_lift_delta_is_quarter_projection():
    for v in ((1, 2), (2, 3), (1, 2, 3), (2, 3, 5), (1, 3, 4)):
        cert = kronecker_lift(v, F(1, 3))
        _, p_sq = shortest_projected_vector(v)
        assert cert.delta_sq == p_sq / 4
        assert cert.delta_sq == density_radius_sq(v, cert.outer_plane)


def test_lift_json_shape():
    data = kronecker_lift((2, 3), F(1, 7)).to_json_dict()
    assert data["kind"] == "density-certificate"
    assert data["inner_direction"] == [2, 3]
    assert data["delta_sq"] == "1/52"
    assert data["guaranteed"] is True
    assert data["outer_plane"]["covolume_sq"] == 1


def test_lift_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        kronecker_lift((1, 2), 0)


@pytest.mark.parametrize(
    "v, expected",
    [((1, 1), F(1, 8)), ((1, 0), F(1, 4)), ((1, 2), F(1, 20))],
)
def test_density_radius_sq_in_unit_plane(v, expected):
    plane = saturate((1, 0), (0, 1))
    assert density_radius_sq(v, plane) == expected


def test_density_radius_requires_containment():
    plane = saturate((1, 0, 0), (0, 1, 0))
    with pytest.raises(NotContained):
        density_radius_sq((0, 0, 1), plane)


def test_certificate_profile_is_tight():
    for v in ((2, 3), (1, 2, 3), (1, 4), (2, 3, 5)):
        cert = kronecker_lift(v, F(1, 2))
        prof = certificate_profile(cert)
        assert prof.spacing_identity_ok
        assert prof.samples == 64
        assert prof.max_sample_sq <= cert.delta_sq
        assert prof.tight_sample_sq == cert.delta_sq
        assert abs(float(prof.tight_sample_sq) - float(cert.delta_sq)) <= 1e-9


# --- slices and dense sequences -------------------------------------------


def test_slice_known_values():
    assert slice_plane_to_line((1, 1, 1), (0, 1, 2)) == (1, -1, -3)
    assert slice_plane_to_line((1, 1, 1), (0, 0, 1)) == (1, 1, -1)


def test_slice_output_lies_in_plane_with_nonzero_coords():
    rng = random.Random(11)
    seen = 0
    while seen < 30:
        u = tuple(rng.randint(-3, 3) for _ in range(3))
        v = tuple(rng.randint(-3, 3) for _ in range(3))
        try:
            w = slice_plane_to_line(u, v)
        except (DegenerateBasis, ValueError):
            continue
        seen += 1
        assert all(c != 0 for c in w)
        saturate(u, v).coords_of(w)
        assert w == primitive_part(w)


def test_slice_rejects_parallel():
    with pytest.raises(DegenerateBasis):
        slice_plane_to_line((1, 2, 3), (2, 4, 6))


def test_dense_sequence_values():
    assert dense_sequence((1, 1, 1), (0, 1, 2), 0) == (1, 1, 1)
    assert dense_sequence((1, 1, 1), (0, 1, 2), 1) == (1, 2, 3)
    assert dense_sequence((1, 1, 1), (0, 1, 2), 2) == (1, 3, 5)
    assert dense_sequence((2, 2), (0, 2), 1) == (1, 2)


def test_dense_sequence_validates():
    with pytest.raises(ValueError):
        dense_sequence((1, 0), (0, 1), -1)
    with pytest.raises(DegenerateBasis):
        dense_sequence((1, 2), (2, 4), 1)


# --- exact plane distances ------------------------------------------------


@pytest.mark.parametrize(
    "u, v, d",
    [
        ((1, 2, 0), (0, 0, 1), F(1, 6)),
        ((1, 0), (0, 1), F(0)),
        ((1, 0, 0), (0, 1, 0), F(1, 2)),
        ((1, 0, 1), (0, 1, 1), F(1, 6)),
    ],
)
def test_d_subtorus2_values(u, v, d):
    assert d_subtorus2(u, v) == d


def test_d_subtorus2_product_case_matches_line():
    assert d_subtorus2((1, 2, 0), (0, 0, 1)) == d_subtorus1((1, 2))
    assert d_subtorus2((1, 3, 0), (0, 0, 1)) == d_subtorus1((1, 3))


def test_d_subtorus2_full_hyperplane_case():
    # the saturation of this pair is the whole hyperplane x1 + x2 = x3
    assert d_subtorus2((1, 0, 1), (0, 1, 1)) == d_hyperplane((1, 1, -1))


def test_d_subtorus2_symmetric_and_basis_independent():
    assert d_subtorus2((1, 0, 1), (0, 1, 1)) == d_subtorus2((0, 1, 1), (1, 0, 1))
    assert d_subtorus2((1, 0, 1), (1, 1, 2)) == d_subtorus2((1, 0, 1), (0, 1, 1))


def test_d_subtorus2_budget():
    with pytest.raises(BudgetExceeded):
        d_subtorus2((13, 0, 1), (0, 1, 1))
    raised = d_subtorus2((13, 0, 1), (0, 1, 1), entry_budget=14)
    assert raised == d_hyperplane((1, 13, -13)) == F(1, 54)


def test_triangle_bound_line_vs_lifted_plane():
    # L-inf distance of the line exceeds the plane's by at most the
    # certified L2 density radius
    for v in ((1, 2, 3), (2, 3, 5), (1, 1, 2), (1, 3, 4), (2, 3, 4), (1, 2, 5)):
        cert = kronecker_lift(v, F(1, 10))
        plane = cert.outer_plane
        d1 = d_subtorus1(v)
        d2 = d_subtorus2(plane.basis_u, plane.basis_v)
        gap = d1 - d2
        assert gap <= 0 or gap * gap <= cert.delta_sq


# --- named constants ------------------------------------------------------


@pytest.mark.parametrize(
    "k, coef, power",
    [
        (0, F(1), 0),
        (1, F(2), 0),
        (2, F(1), 1),
        (3, F(4, 3), 1),
        (4, F(1, 2), 2),
        (5, F(8, 15), 2),
    ],
)
def test_ball_volume_exact(k, coef, power):
    assert ball_volume(k) == PiPower(coef, power)


def test_pi_power_bounds_enclose_decimal():
    for pp in (ball_volume(3), lrc_threshold(3), basis_length_bound(2, 1)):
        lo, hi = pp.bounds()
        assert float(lo) <= pp.decimal() <= float(hi)
        rlo, rhi = pp.bounds(REFINED_PI_BOUNDS)
        assert lo <= rlo <= rhi <= hi


def test_basis_length_bound_values():
    assert basis_length_bound(1, 1) == PiPower(F(1), 0)
    assert basis_length_bound(2, 1) == PiPower(F(6), -1)
    assert basis_length_bound(2, 5).coefficient == 5 * basis_length_bound(2, 1).coefficient


def test_lift_volume_threshold_values():
    assert lift_volume_threshold(3, 1, F(2, 25)) == PiPower(F(625), -1)
    with pytest.raises(ValueError):
        lift_volume_threshold(3, 3, F(1, 2))
    with pytest.raises(ValueError):
        lift_volume_threshold(3, 1, 0)


def test_lrc_threshold_values():
    assert lrc_threshold(2) == PiPower(F(3), 0)
    assert lrc_threshold(3) == PiPower(F(144), -1)
    lo, hi = lrc_threshold(3).bounds(DEFAULT_PI_BOUNDS)
    assert (lo, hi) == (F(60000, 1309), F(14400000, 314159))
    with pytest.raises(ValueError):
        lrc_threshold(1)


def test_threshold_stays_below_power_bound():
    assert all(threshold_below_power_bound(n) for n in range(2, 13))


def test_named_constants_bundle():
    nc = named_constants(3)
    assert nc.epsilon == F(1, 6)
    assert nc.c_star == nc.lrc_threshold == PiPower(F(144), -1)
    assert nc.omega_k == PiPower(F(2), 0)
    assert nc.tao_bound == 3.0**7.5
    assert nc.threshold_below_tao

    nc25 = named_constants(3, epsilon=F(2, 25))
    assert nc25.c_star == PiPower(F(625), -1)
    assert 198.9 < nc25.c_star.decimal() < 199.0


def test_named_constants_validates():
    with pytest.raises(ValueError):
        named_constants(3, k=3)
