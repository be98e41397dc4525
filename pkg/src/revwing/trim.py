"""Hover trim: balance propeller yaw torque against airfoil drag torque.

In steady hover the two propellers spin the robot up until their combined
yaw torque 2*R_m*T_p(U, Omega) exactly cancels the drag torque
Q = C_Q*Omega^2 of the revolving wings.  The trim revolving rate is the
root of

    f(Omega) = 2*R_m*T_p(U, Omega) - C_Q*Omega^2

which is strictly decreasing (propeller thrust falls with inflow while
wing drag grows), so bisection on a sign-changing bracket is exact and
unconditional.  The vertical thrust then follows from T_R = C_T,R*Omega^2.
"""

import math
from dataclasses import dataclass

from .params import AeroCoefficients
from .planform import WingGeometry
from .propulsion import (OperatingPointError, PropellerState, PropulsionUnit,
                         solve_operating_point)
from .wingaero import DEFAULT_STATION_COUNT, WingAeroResult, wing_coefficients

__all__ = [
    "TrimState",
    "TrimError",
    "SweepResult",
    "solve_trim",
    "voltage_sweep",
]

# Contract bound on the trim residual is |f| < 1e-6 * C_Q * Omega^2; the
# default target is tighter so objective surfaces built on trims stay smooth.
TRIM_TOLERANCE = 1e-10
OMEGA_REV_FLOOR = 0.5   # rad/s; below this the robot is not meaningfully revolving
OMEGA_REV_CAP = 200.0   # rad/s; bracket ceiling when the propellers never stall
_BRACKET_SCAN_STEP = 2.0


class TrimError(RuntimeError):
    """Raised when no trim exists in the bracket (cannot spin up)."""


@dataclass(frozen=True)
class TrimState:
    """Converged hover equilibrium at one drive voltage."""

    voltage: float              # U, V
    omega_rev: float            # robot revolving rate Omega, rad/s
    thrust: float               # total wing thrust T_R, N
    torque: float               # wing drag torque Q, N*m
    prop_state: PropellerState  # per-propeller operating point at trim
    payload_margin: float       # T_R - m*g, N (nan when no mass was given)


@dataclass(frozen=True)
class SweepResult:
    """Voltage sweep outcome; failed points are reported, not fatal."""

    points: tuple[TrimState, ...]
    failures: tuple[tuple[float, str], ...]   # (voltage, reason)


def solve_trim(
    voltage: float,
    geometry: WingGeometry,
    coeffs: AeroCoefficients,
    unit: PropulsionUnit,
    robot_mass: float | None = None,
    gravity: float = 9.81,
    station_count: int = DEFAULT_STATION_COUNT,
    aero: WingAeroResult | None = None,
    tol: float = TRIM_TOLERANCE,
) -> TrimState:
    """Find the hover equilibrium for one drive voltage.

    Passing a precomputed ``aero`` result skips the spanwise solve, which
    the optimizer and sweeps exploit; it must belong to ``geometry``.
    """
    if aero is None:
        aero = wing_coefficients(geometry, coeffs, station_count)
    c_t_r, c_q = aero.c_t_r, aero.c_q
    if c_q <= 0.0:
        raise TrimError(f"wing torque coefficient must be positive, got {c_q:.3e}")

    r_m = unit.mount_radius
    rho = coeffs.rho

    def prop_at(omega_rev: float) -> PropellerState:
        return solve_operating_point(voltage, omega_rev * r_m,
                                     unit.propeller, unit.motor, rho)

    def balance(omega_rev: float) -> float:
        return 2.0 * r_m * prop_at(omega_rev).thrust - c_q * omega_rev**2

    # Bracket: scan outward until the propellers stop producing thrust
    # (beyond that f is certainly negative) or the ceiling is reached.
    lo = OMEGA_REV_FLOOR
    hi = lo
    while hi < OMEGA_REV_CAP:
        try:
            state = prop_at(hi)
        except OperatingPointError:
            break
        if state.thrust <= 0.0:
            break
        hi += _BRACKET_SCAN_STEP
    hi = min(hi, OMEGA_REV_CAP)

    try:
        f_lo = balance(lo)
        f_hi = balance(hi)
    except OperatingPointError as exc:
        raise TrimError(f"cannot spin up at U={voltage} V: {exc}") from exc
    if f_lo <= 0.0 or f_hi >= 0.0:
        raise TrimError(
            f"cannot spin up at U={voltage} V: no torque balance in "
            f"[{lo}, {hi:.1f}] rad/s (propellers too weak for the wing drag)")

    omega = 0.5 * (lo + hi)
    for _ in range(80):
        f_mid = balance(omega)
        if abs(f_mid) < tol * c_q * omega**2:
            break
        if f_mid > 0.0:
            lo = omega
        else:
            hi = omega
        omega = 0.5 * (lo + hi)

    prop = prop_at(omega)
    thrust = c_t_r * omega**2
    margin = thrust - robot_mass * gravity if robot_mass is not None else math.nan
    return TrimState(voltage=voltage, omega_rev=omega, thrust=thrust,
                     torque=c_q * omega**2, prop_state=prop,
                     payload_margin=margin)


def voltage_sweep(
    v_min: float,
    v_max: float,
    steps: int,
    geometry: WingGeometry,
    coeffs: AeroCoefficients,
    unit: PropulsionUnit,
    robot_mass: float | None = None,
    gravity: float = 9.81,
    station_count: int = DEFAULT_STATION_COUNT,
) -> SweepResult:
    """Trim solutions at uniformly spaced drive voltages.

    The spanwise coefficients are computed once and shared by all points.
    Individual trim failures are collected per voltage; the sweep continues.
    """
    if not 0.0 < v_min < v_max:
        raise ValueError("need 0 < v_min < v_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    aero = wing_coefficients(geometry, coeffs, station_count)
    points = []
    failures = []
    for i in range(steps):
        voltage = v_min + (v_max - v_min) * i / (steps - 1)
        try:
            points.append(solve_trim(voltage, geometry, coeffs, unit,
                                     robot_mass=robot_mass, gravity=gravity,
                                     aero=aero))
        except (TrimError, ValueError) as exc:
            failures.append((voltage, str(exc)))
    return SweepResult(points=tuple(points), failures=tuple(failures))
