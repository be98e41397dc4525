"""Motor-driven propeller under axial inflow.

The propeller sits at distance R_m from the revolving axis, so hovering at
revolving rate Omega it sees a clean axial free stream u = Omega*R_m.
With the tangential induced velocity neglected, the uniform axial induced
velocity v_i satisfies MT = BEM:

    2*rho*pi*R_p^2 * v_i*(v_i + u)
        = 0.5*rho*n*R_p^4 * (a0 - a1*(v_i + u)/(omega*R_p)) * omega^2

which is a quadratic in v_i with a closed-form nonnegative root.  The
propeller torque follows from the profile-drag and induced-power terms,
and the steady-state motor law tau = (k/R_i)*(U - k*omega) closes the
system: for a given drive voltage the spin rate omega is the unique root
of the torque balance on (0, U/k).
"""

import math
from dataclasses import dataclass

from .params import MotorParams, PropellerParams

__all__ = [
    "PropulsionUnit",
    "PropellerState",
    "OperatingPointError",
    "induced_velocity",
    "bem_thrust",
    "mt_thrust",
    "propeller_torque",
    "solve_operating_point",
    "thrust_map",
]

# Contract bound on the omega-solve residual is 1e-9 N*m; the solver
# converges far tighter so downstream objectives stay smooth.
TORQUE_BALANCE_TOL = 1e-13     # N*m, target residual of the omega solve
INDUCED_RESIDUAL_TOL = 1e-10   # relative residual of the v_i quadratic


class OperatingPointError(RuntimeError):
    """No spin-rate root in (0, U/k); signals inputs outside the modeled envelope."""


@dataclass(frozen=True)
class PropulsionUnit:
    """One motor-propeller pair and its mounting radius on the airframe."""

    propeller: PropellerParams
    motor: MotorParams
    mount_radius: float   # R_m, m

    def __post_init__(self):
        if self.mount_radius <= 0.0:
            raise ValueError("mount_radius must be positive")


@dataclass(frozen=True)
class PropellerState:
    """Steady operating point of one motor-driven propeller."""

    omega: float             # propeller spin rate, rad/s
    induced_velocity: float  # uniform axial induced velocity v_i, m/s
    thrust: float            # T_p, N (negative = windmilling, flagged)
    torque: float            # tau_p, N*m
    axial_inflow: float      # u = Omega*R_m, m/s
    stalled: bool            # True when no nonnegative v_i root existed


def induced_velocity(omega: float, axial_inflow: float, prop: PropellerParams,
                     rho: float) -> float:
    """Nonnegative root v_i of the MT/BEM thrust match; 0.0 when none exists.

    The root disappears when the inflow is so large that the blade-element
    thrust is nonpositive even at zero induced flow (windmilling edge).
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    if axial_inflow < 0.0:
        raise ValueError("axial_inflow must be nonnegative")
    u = axial_inflow
    r_p = prop.radius
    n = prop.blade_count
    # v_i^2 + b*v_i + c = 0 after dividing the thrust match by 2*pi*rho*R_p^2
    b = u + n * r_p * prop.a1 * omega / (4.0 * math.pi)
    c = n * r_p * omega / (4.0 * math.pi) * (prop.a1 * u - prop.a0 * omega * r_p)
    if c > 0.0:
        return 0.0
    return 0.5 * (-b + math.sqrt(b * b - 4.0 * c))


def bem_thrust(omega: float, v_i: float, axial_inflow: float, prop: PropellerParams,
               rho: float) -> float:
    """Blade-element propeller thrust at a given induced velocity, N."""
    r_p = prop.radius
    inflow_ratio = (v_i + axial_inflow) / (omega * r_p)
    return 0.5 * rho * prop.blade_count * r_p**4 * (prop.a0 - prop.a1 * inflow_ratio) * omega**2


def mt_thrust(omega: float, v_i: float, axial_inflow: float, prop: PropellerParams,
              rho: float) -> float:
    """Momentum-theory propeller thrust at a given induced velocity, N."""
    return 2.0 * rho * math.pi * prop.radius**2 * v_i * (v_i + axial_inflow)


def propeller_torque(omega: float, v_i: float, axial_inflow: float, thrust: float,
                     prop: PropellerParams, rho: float) -> float:
    """Propeller shaft torque: profile drag plus induced/translational power."""
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    profile = 0.5 * rho * prop.blade_count * prop.radius**5 * prop.a2 * omega**2
    return profile + thrust * (prop.kappa * v_i + axial_inflow) / omega


def _torque_at(omega: float, axial_inflow: float, prop: PropellerParams,
               rho: float) -> tuple[float, float, float]:
    """(tau_p, v_i, T_p) at a trial spin rate."""
    v_i = induced_velocity(omega, axial_inflow, prop, rho)
    thrust = bem_thrust(omega, v_i, axial_inflow, prop, rho)
    return propeller_torque(omega, v_i, axial_inflow, thrust, prop, rho), v_i, thrust


def solve_operating_point(
    voltage: float,
    axial_inflow: float,
    prop: PropellerParams,
    motor: MotorParams,
    rho: float,
    tol: float = TORQUE_BALANCE_TOL,
) -> PropellerState:
    """Spin rate and thrust of a motor-driven propeller at a drive voltage.

    Solves (k/R_i)*(U - k*omega) = tau_p(omega, u) by safeguarded bisection
    on (0, U/k] with a Newton polish.  The bracket is guaranteed for the
    modeled envelope: motor torque falls linearly in omega while propeller
    torque rises from zero.
    """
    if not 0.0 < voltage <= motor.max_voltage:
        raise ValueError(
            f"voltage must lie in (0, {motor.max_voltage}], got {voltage}")
    if axial_inflow < 0.0:
        raise ValueError("axial_inflow must be nonnegative")

    k, r_i = motor.back_emf_k, motor.resistance
    omega_top = voltage / k

    def balance(omega: float) -> float:
        tau, _, _ = _torque_at(omega, axial_inflow, prop, rho)
        return (k / r_i) * (voltage - k * omega) - tau

    lo, hi = 1e-9 * omega_top, omega_top
    f_lo, f_hi = balance(lo), balance(hi)
    if f_lo <= 0.0 or f_hi >= 0.0:
        raise OperatingPointError(
            f"no spin-rate root in (0, {omega_top:.1f}] rad/s at "
            f"U={voltage} V, inflow={axial_inflow} m/s")

    omega = 0.5 * (lo + hi)
    for _ in range(60):
        f_mid = balance(omega)
        if f_mid > 0.0:
            lo = omega
        else:
            hi = omega
        omega = 0.5 * (lo + hi)

    # Newton polish on the bisection result; keep iterates inside the bracket
    for _ in range(8):
        f = balance(omega)
        if abs(f) < tol:
            break
        h = 1e-7 * omega_top
        dfd = (balance(omega + h) - f) / h
        if dfd == 0.0:
            break
        step = omega - f / dfd
        omega = step if lo < step < hi else 0.5 * (lo + hi)

    tau, v_i, thrust = _torque_at(omega, axial_inflow, prop, rho)
    stalled = v_i == 0.0 and thrust <= 0.0
    return PropellerState(omega=omega, induced_velocity=v_i, thrust=thrust,
                          torque=tau, axial_inflow=axial_inflow, stalled=stalled)


def thrust_map(voltage: float, omega_rev: float, unit: PropulsionUnit,
               rho: float) -> float:
    """Propeller thrust T_p(U, Omega) with the inflow set by the revolving rate."""
    if omega_rev < 0.0:
        raise ValueError("omega_rev must be nonnegative")
    state = solve_operating_point(voltage, omega_rev * unit.mount_radius,
                                  unit.propeller, unit.motor, rho)
    return state.thrust
