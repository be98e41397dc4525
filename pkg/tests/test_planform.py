"""Wing planform spline, area quadrature, and mass model."""

import math

import numpy as np
import pytest

from revwing.planform import (MassModel, WingGeometry, chord_at,
                              planform_outline, robot_mass, spline_minimum,
                              wing_area)

GEOM = WingGeometry(pitch=math.radians(27.5), tip_radius=0.23,
                    c1=0.03, c2=0.05, c3=0.07)


def test_spline_interpolates_all_knots():
    for r, c in zip(GEOM.knot_radii, GEOM.knot_chords):
        assert chord_at(GEOM, r) == pytest.approx(c, rel=1e-12, abs=1e-15)


def test_tip_chord_is_exactly_zero():
    assert chord_at(GEOM, GEOM.tip_radius) == 0.0


def test_root_chord_hits_knot():
    geom = WingGeometry(pitch=0.4, tip_radius=0.2, c1=0.03, c2=0.04, c3=0.05)
    assert chord_at(geom, geom.root_radius) == pytest.approx(0.03, rel=1e-12)


def test_equal_chords_reproduced_at_knots():
    geom = WingGeometry(pitch=0.4, tip_radius=0.2, c1=0.04, c2=0.04, c3=0.04)
    for r, c in zip(geom.knot_radii, geom.knot_chords):
        assert chord_at(geom, r) == pytest.approx(c, rel=1e-12, abs=1e-15)


def test_out_of_span_raises():
    with pytest.raises(ValueError):
        chord_at(GEOM, GEOM.root_radius - 1e-3)
    with pytest.raises(ValueError):
        chord_at(GEOM, GEOM.tip_radius + 1e-3)


def test_chord_continuous_first_derivative_at_knots():
    # second-order one-sided differences from both sides of each interior knot
    h = 1e-5
    for r in GEOM.knot_radii[1:3]:
        f = lambda x: chord_at(GEOM, x)
        left = (3 * f(r) - 4 * f(r - h) + f(r - 2 * h)) / (2 * h)
        right = (-3 * f(r) + 4 * f(r + h) - f(r + 2 * h)) / (2 * h)
        assert left == pytest.approx(right, abs=1e-6)


def test_wing_area_matches_dense_trapezoid_oracle():
    rs = np.linspace(GEOM.root_radius, GEOM.tip_radius, 100_000)
    chords = np.array([chord_at(GEOM, float(r)) for r in rs])
    oracle = float(np.trapezoid(chords, rs))
    assert wing_area(GEOM) == pytest.approx(oracle, rel=1e-3)


def test_wing_area_node_doubling_converged():
    coarse = wing_area(GEOM, nodes=2049)
    fine = wing_area(GEOM, nodes=4097)
    assert abs(fine - coarse) / fine < 1e-3


def test_wing_area_zero_for_zero_chords():
    geom = WingGeometry(pitch=0.3, tip_radius=0.2, c1=0.0, c2=0.0, c3=0.0)
    assert wing_area(geom) == 0.0


def test_wing_area_scales_linearly_with_chords():
    doubled = WingGeometry(pitch=GEOM.pitch, tip_radius=GEOM.tip_radius,
                           c1=2 * GEOM.c1, c2=2 * GEOM.c2, c3=2 * GEOM.c3)
    assert wing_area(doubled) == pytest.approx(2.0 * wing_area(GEOM), rel=1e-9)


def test_wing_area_monotone_in_each_control_chord():
    base = wing_area(GEOM)
    for field in ("c1", "c2", "c3"):
        kwargs = dict(pitch=GEOM.pitch, tip_radius=GEOM.tip_radius,
                      c1=GEOM.c1, c2=GEOM.c2, c3=GEOM.c3)
        kwargs[field] += 0.01
        assert wing_area(WingGeometry(**kwargs)) > base


def test_spline_minimum_flags_undershoot():
    # alternating knots force the natural spline below zero between them
    geom = WingGeometry(pitch=0.4, tip_radius=0.23, c1=0.06, c2=0.0, c3=0.09)
    assert spline_minimum(geom) < -1e-3
    assert spline_minimum(GEOM) >= -1e-12


def test_chord_clamped_where_spline_dips():
    geom = WingGeometry(pitch=0.4, tip_radius=0.23, c1=0.06, c2=0.0, c3=0.09)
    rs = np.linspace(geom.root_radius, geom.tip_radius, 1000)
    assert min(chord_at(geom, float(r)) for r in rs) == 0.0


def test_robot_mass_degenerate_fixed_only():
    mm = MassModel(rod_linear_density=0.0, wing_areal_density=0.0, fixed_mass=0.0138)
    assert robot_mass(GEOM, mm, 0.23) == pytest.approx(0.0138, rel=1e-15)


def test_robot_mass_terms():
    mm = MassModel(rod_linear_density=4.7e-3, wing_areal_density=92.6e-3,
                   fixed_mass=0.010)
    area = wing_area(GEOM)
    expected = 0.010 + 4.7e-3 * 2 * 0.23 + 92.6e-3 * 2 * area
    assert robot_mass(GEOM, mm, 0.23) == pytest.approx(expected, rel=1e-12)


def test_robot_mass_wing_term_linear_in_areal_density():
    lean = MassModel(rod_linear_density=0.0, wing_areal_density=50e-3, fixed_mass=0.0)
    heavy = MassModel(rod_linear_density=0.0, wing_areal_density=100e-3, fixed_mass=0.0)
    assert robot_mass(GEOM, heavy, 0.23) == pytest.approx(
        2.0 * robot_mass(GEOM, lean, 0.23), rel=1e-12)


def test_reference_design_weight_at_g981():
    # the optimized reference design totals 13.8 g -> 135.4 mN of weight
    from revwing.config import profile
    cfg = profile("crazyflie-bench")
    mass = robot_mass(cfg.geometry(), cfg.mass_model(),
                      cfg.propulsion_unit().mount_radius)
    assert mass == pytest.approx(0.0138, abs=2e-8)
    assert mass * 9.81 == pytest.approx(0.1354, abs=2e-4)


def test_planform_outline_straight_leading_edge():
    rows = planform_outline(GEOM, samples=50)
    assert len(rows) == 50
    for r, chord, le, te in rows:
        assert le == 0.0
        assert te == pytest.approx(-chord, rel=1e-15)
    assert rows[-1][1] == 0.0  # tip chord


def test_geometry_validation():
    with pytest.raises(ValueError):
        WingGeometry(pitch=0.0, tip_radius=0.2, c1=0.01, c2=0.01, c3=0.01)
    with pytest.raises(ValueError):
        WingGeometry(pitch=math.pi / 2, tip_radius=0.2, c1=0.01, c2=0.01, c3=0.01)
    with pytest.raises(ValueError):
        WingGeometry(pitch=0.4, tip_radius=-0.1, c1=0.01, c2=0.01, c3=0.01)
    with pytest.raises(ValueError):
        WingGeometry(pitch=0.4, tip_radius=0.2, c1=-0.01, c2=0.01, c3=0.01)
