"""Coupled momentum-theory / blade-element solve for the revolving wings.

Each radial station carries two unknowns, the axial induced velocity v_a
and the tangential induced velocity v_theta.  Momentum theory gives the
elemental thrust and torque of the annulus as

    dT/dr = 4*pi*r*rho*v_a^2
    dQ/dr = 4*pi*r^2*rho*v_theta*v_a

while the blade-element side evaluates the same quantities from the local
flow over N airfoils:

    V_b     = hypot(Omega*r - v_theta, v_a)
    epsilon = atan(v_a / (Omega*r - v_theta))   (downwash angle, >= 0)
    alpha   = beta - epsilon
    dT/dr   = N * q * (C_l(alpha)*cos(eps) - C_d(alpha)*sin(eps))
    dQ/dr   = N * q * (C_l(alpha)*sin(eps) + C_d(alpha)*cos(eps)) * r

with q = rho*V_b^2*c/2.  A station is converged when both pairs agree to
1e-9 relative.  Integrating the converged stations over the span yields
the thrust and torque coefficients of T_R = C_T,R*Omega^2, Q = C_Q*Omega^2;
both scale out the revolving rate exactly, so the integration runs at an
arbitrary reference rate.
"""

import math
from dataclasses import dataclass

from .params import AeroCoefficients, drag_coefficient, lift_coefficient
from .planform import WingGeometry, chord_at

__all__ = [
    "StationSolution",
    "WingAeroResult",
    "StationConvergenceError",
    "solve_station",
    "wing_coefficients",
]

DEFAULT_STATION_COUNT = 128
DEFAULT_OMEGA_REF = 40.0      # rad/s; results are Omega-invariant to solver tolerance
STATION_TOLERANCE = 1e-9      # relative MT/BEM residual at convergence
STATION_ITER_BUDGET = 200
_RESIDUAL_FLOOR = 1e-12       # N/m scale floor for near-zero-chord stations
_FIXED_POINT_DAMPING = 0.5
_FIXED_POINT_SHARE = 100      # iterations before handing over to Newton


class StationConvergenceError(RuntimeError):
    """Raised when a station solve exhausts its iteration budget."""

    def __init__(self, r: float, residual_thrust: float, residual_torque: float):
        self.r = r
        self.residual_thrust = residual_thrust
        self.residual_torque = residual_torque
        super().__init__(
            f"station at r={r:.6g} m did not converge: "
            f"thrust residual {residual_thrust:.3e}, torque residual {residual_torque:.3e}"
        )


@dataclass(frozen=True)
class StationSolution:
    """Converged state of one radial station."""

    r: float          # radial position, m
    v_a: float        # axial induced velocity, m/s
    v_theta: float    # tangential induced velocity, m/s
    alpha: float      # angle of attack, rad
    epsilon: float    # downwash angle, rad
    v_b: float        # perceived airspeed, m/s
    dT_dr: float      # elemental thrust density, N/m
    dQ_dr: float      # elemental torque density, N*m/m


@dataclass(frozen=True)
class WingAeroResult:
    """Spanwise-integrated coefficients plus the per-station diagnostics."""

    c_t_r: float      # thrust coefficient, N*s^2/rad^2
    c_q: float        # torque coefficient, N*m*s^2/rad^2
    omega_ref: float  # revolving rate the stations were solved at, rad/s
    stations: tuple[StationSolution, ...]


def _bem_densities(r, omega_rev, chord, pitch, coeffs, n_airfoils, v_a, v_theta):
    """Blade-element dT/dr and dQ/dr at a trial induced-velocity pair."""
    s = omega_rev * r - v_theta
    eps = math.atan2(v_a, s)
    v_b = math.hypot(s, v_a)
    alpha = pitch - eps
    q = 0.5 * coeffs.rho * v_b * v_b * chord * n_airfoils
    c_l = lift_coefficient(alpha, coeffs)
    c_d = drag_coefficient(alpha, coeffs)
    t_bem = q * (c_l * math.cos(eps) - c_d * math.sin(eps))
    q_bem = q * (c_l * math.sin(eps) + c_d * math.cos(eps)) * r
    return t_bem, q_bem


def _mt_densities(r, rho, v_a, v_theta):
    """Momentum-theory dT/dr and dQ/dr for the annulus at radius r."""
    t_mt = 4.0 * math.pi * r * rho * v_a * v_a
    q_mt = 4.0 * math.pi * r * r * rho * v_theta * v_a
    return t_mt, q_mt


def _residuals(t_bem, q_bem, t_mt, q_mt):
    res_t = abs(t_bem - t_mt) / max(abs(t_bem), abs(t_mt), _RESIDUAL_FLOOR)
    res_q = abs(q_bem - q_mt) / max(abs(q_bem), abs(q_mt), _RESIDUAL_FLOOR)
    return res_t, res_q


def solve_station(
    r: float,
    omega_rev: float,
    chord: float,
    pitch: float,
    coeffs: AeroCoefficients,
    n_airfoils: int = 2,
    tol: float = STATION_TOLERANCE,
    max_iter: int = STATION_ITER_BUDGET,
) -> StationSolution:
    """Solve one station for (v_a, v_theta) matching MT against BEM.

    Damped fixed-point iteration from v_a = 0.05*Omega*r, v_theta = 0
    covers the small-induced-flow regime; a finite-difference Newton
    takes over if the fixed point has not converged within its share of
    the budget.  chord = 0 returns the trivial zero-flow solution.
    """
    if r <= 0.0 or omega_rev <= 0.0:
        raise ValueError("r and omega_rev must be positive")
    if chord < 0.0:
        raise ValueError("chord must be nonnegative")
    if not 0.0 < pitch < math.pi / 2:
        raise ValueError(f"pitch must lie in (0, pi/2), got {pitch}")

    if chord == 0.0:
        return StationSolution(r=r, v_a=0.0, v_theta=0.0, alpha=pitch, epsilon=0.0,
                               v_b=omega_rev * r, dT_dr=0.0, dQ_dr=0.0)

    rho = coeffs.rho
    tip_speed = omega_rev * r
    coef = n_airfoils * chord / (8.0 * math.pi * r)
    v_a, v_theta = 0.05 * tip_speed, 0.0
    res_t = res_q = math.inf

    fp_iters = min(_FIXED_POINT_SHARE, max_iter)
    it = 0
    for it in range(fp_iters):
        t_bem, q_bem = _bem_densities(r, omega_rev, chord, pitch, coeffs, n_airfoils,
                                      v_a, v_theta)
        t_mt, q_mt = _mt_densities(r, rho, v_a, v_theta)
        res_t, res_q = _residuals(t_bem, q_bem, t_mt, q_mt)
        if res_t < tol and res_q < tol:
            return StationSolution(r=r, v_a=v_a, v_theta=v_theta,
                                   alpha=pitch - math.atan2(v_a, tip_speed - v_theta),
                                   epsilon=math.atan2(v_a, tip_speed - v_theta),
                                   v_b=math.hypot(tip_speed - v_theta, v_a),
                                   dT_dr=t_bem, dQ_dr=q_bem)
        # fixed-point update: invert the MT relations at the BEM force state
        s = tip_speed - v_theta
        eps = math.atan2(v_a, s)
        v_b = math.hypot(s, v_a)
        alpha = pitch - eps
        c_l = lift_coefficient(alpha, coeffs)
        c_d = drag_coefficient(alpha, coeffs)
        va_sq = coef * v_b * (c_l * s - c_d * v_a)
        va_new = math.sqrt(va_sq) if va_sq > 0.0 else 0.0
        vt_new = coef * v_b * (c_l * v_a + c_d * s) / va_new if va_new > 0.0 else 0.0
        v_a += _FIXED_POINT_DAMPING * (va_new - v_a)
        v_theta += _FIXED_POINT_DAMPING * (vt_new - v_theta)
        v_theta = min(max(v_theta, 0.0), 0.999 * tip_speed)

    # Newton fallback with finite-difference Jacobian
    for it2 in range(max_iter - fp_iters):
        t_bem, q_bem = _bem_densities(r, omega_rev, chord, pitch, coeffs, n_airfoils,
                                      v_a, v_theta)
        t_mt, q_mt = _mt_densities(r, rho, v_a, v_theta)
        res_t, res_q = _residuals(t_bem, q_bem, t_mt, q_mt)
        if res_t < tol and res_q < tol:
            return StationSolution(r=r, v_a=v_a, v_theta=v_theta,
                                   alpha=pitch - math.atan2(v_a, tip_speed - v_theta),
                                   epsilon=math.atan2(v_a, tip_speed - v_theta),
                                   v_b=math.hypot(tip_speed - v_theta, v_a),
                                   dT_dr=t_bem, dQ_dr=q_bem)
        f1 = t_bem - t_mt
        f2 = q_bem - q_mt
        h = 1e-7 * tip_speed

        t_u, q_u = _bem_densities(r, omega_rev, chord, pitch, coeffs, n_airfoils,
                                  v_a + h, v_theta)
        tm_u, qm_u = _mt_densities(r, rho, v_a + h, v_theta)
        t_w, q_w = _bem_densities(r, omega_rev, chord, pitch, coeffs, n_airfoils,
                                  v_a, v_theta + h)
        tm_w, qm_w = _mt_densities(r, rho, v_a, v_theta + h)
        j11 = ((t_u - tm_u) - f1) / h
        j12 = ((t_w - tm_w) - f1) / h
        j21 = ((q_u - qm_u) - f2) / h
        j22 = ((q_w - qm_w) - f2) / h
        det = j11 * j22 - j12 * j21
        if det == 0.0:
            break
        du = -(f1 * j22 - f2 * j12) / det
        dw = -(j11 * f2 - j21 * f1) / det
        step = max(abs(du), abs(dw))
        if step > 0.2 * tip_speed:  # trust region against wild FD steps
            scale = 0.2 * tip_speed / step
            du *= scale
            dw *= scale
        v_a = max(v_a + du, 0.0)
        v_theta = min(max(v_theta + dw, 0.0), 0.999 * tip_speed)

    raise StationConvergenceError(r, res_t, res_q)


def wing_coefficients(
    geometry: WingGeometry,
    coeffs: AeroCoefficients,
    station_count: int = DEFAULT_STATION_COUNT,
    omega_ref: float = DEFAULT_OMEGA_REF,
) -> WingAeroResult:
    """Integrate station solutions into C_T,R and C_Q (totals over N airfoils).

    Midpoint rule over [root, tip] avoids the degenerate zero-chord tip
    endpoint.  Stations are independent; the loop order carries no state.
    """
    if station_count < 16:
        raise ValueError(f"station_count must be >= 16, got {station_count}")
    root, tip = geometry.root_radius, geometry.tip_radius
    h = (tip - root) / station_count
    thrust = 0.0
    torque = 0.0
    stations = []
    for i in range(station_count):
        r = root + (i + 0.5) * h
        c = chord_at(geometry, r)
        st = solve_station(r, omega_ref, c, geometry.pitch, coeffs,
                           n_airfoils=geometry.airfoil_count)
        stations.append(st)
        thrust += st.dT_dr * h
        torque += st.dQ_dr * h
    omega_sq = omega_ref * omega_ref
    return WingAeroResult(c_t_r=thrust / omega_sq, c_q=torque / omega_sq,
                          omega_ref=omega_ref, stations=tuple(stations))
