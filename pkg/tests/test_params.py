"""Flat-plate coefficient model: examples, symmetry, and validation."""

import math

import numpy as np
import pytest

from revwing.params import (AeroCoefficients, BENCH_AERO, Environment,
                            MotorParams, PropellerParams, drag_coefficient,
                            lift_coefficient)


def test_lift_zero_at_zero_alpha():
    assert lift_coefficient(0.0, BENCH_AERO) == 0.0


def test_lift_peak_at_45_degrees():
    assert lift_coefficient(math.radians(45.0), BENCH_AERO) == pytest.approx(1.72, abs=1e-12)


def test_lift_at_27p5_degrees():
    value = lift_coefficient(math.radians(27.5), BENCH_AERO)
    assert value == pytest.approx(1.408941516177066, abs=1e-12)


def test_drag_minimum_at_zero_alpha():
    assert drag_coefficient(0.0, BENCH_AERO) == pytest.approx(0.11, abs=1e-15)


def test_drag_at_90_degrees():
    value = drag_coefficient(math.pi / 2, BENCH_AERO)
    assert value == pytest.approx(0.11 + 2 * 1.94, abs=1e-12)


def test_lift_odd_drag_even_on_grid():
    alphas = np.linspace(0.0, math.pi / 2, 181)
    for a in alphas:
        assert lift_coefficient(-a, BENCH_AERO) == pytest.approx(
            -lift_coefficient(a, BENCH_AERO), abs=1e-12)
        assert drag_coefficient(-a, BENCH_AERO) == pytest.approx(
            drag_coefficient(a, BENCH_AERO), abs=1e-12)


def test_lift_argmax_at_quarter_pi():
    alphas = np.linspace(0.0, math.pi / 2, 2001)
    values = [lift_coefficient(a, BENCH_AERO) for a in alphas]
    assert alphas[int(np.argmax(values))] == pytest.approx(math.pi / 4,
                                                           abs=alphas[1] - alphas[0])


def test_drag_nondecreasing_on_first_quadrant():
    alphas = np.linspace(0.0, math.pi / 2, 501)
    values = [drag_coefficient(a, BENCH_AERO) for a in alphas]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def test_aero_coefficients_validation():
    with pytest.raises(ValueError):
        AeroCoefficients(c_l1=0.0, c_d0=0.1, c_d1=1.0)
    with pytest.raises(ValueError):
        AeroCoefficients(c_l1=1.0, c_d0=-0.1, c_d1=1.0)
    with pytest.raises(ValueError):
        AeroCoefficients(c_l1=1.0, c_d0=0.1, c_d1=1.0, rho=0.0)


def test_motor_params_validation():
    with pytest.raises(ValueError):
        MotorParams(resistance=0.0, back_emf_k=1e-3, max_voltage=3.5)
    with pytest.raises(ValueError):
        MotorParams(resistance=1.58, back_emf_k=-1e-3, max_voltage=3.5)


def test_propeller_params_validation():
    with pytest.raises(ValueError):
        PropellerParams(radius=0.0)
    with pytest.raises(ValueError):
        PropellerParams(radius=0.023, blade_count=0)
    with pytest.raises(ValueError):
        PropellerParams(radius=0.023, kappa=0.5)


def test_environment_rejects_nonzero_free_stream():
    Environment(gravity=9.81, free_stream=0.0)
    with pytest.raises(ValueError):
        Environment(gravity=9.81, free_stream=1.0)
    with pytest.raises(ValueError):
        Environment(gravity=0.0)
