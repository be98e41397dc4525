"""Payload-maximizing search over the six-dimensional wing/layout space.

Design variables: wing pitch beta, propeller mounting radius R_m, wing
semi-span R_tip, and the three control chords c1-c3.  The objective is
the payload margin T_R(x) - m(x)*g evaluated at the maximum drive
voltage.  Constraints (R_m >= R_tip, R_tip cap, nonnegative chords and
spline, pitch range) enter as additive penalties so the simplex can
order infeasible candidates by how badly they violate.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .params import AeroCoefficients, MotorParams, PropellerParams
from .planform import MassModel, WingGeometry, robot_mass, spline_minimum
from .propulsion import PropulsionUnit
from .simplex import nelder_mead
from .trim import TrimError, TrimState, solve_trim
from .wingaero import DEFAULT_STATION_COUNT, StationConvergenceError

__all__ = [
    "DesignVector",
    "DesignContext",
    "OptimizationReport",
    "InfeasibleSeedError",
    "objective",
    "optimize",
    "DEFAULT_SEED",
]

TIP_RADIUS_CAP = 0.23        # m, largest allowed semi-span
MIN_TIP_RADIUS = 0.02        # m, guards the root cut-out from degenerating
PITCH_CEILING = math.radians(89.0)
PENALTY_WEIGHT = 1e3         # N per meter (or radian) of constraint violation
PENALTY_OFFSET = 1.0         # N, drops every infeasible point below feasible ones
SPLINE_DIP_SLACK = 1e-9      # m; spline undershoot below this is evaluation noise
SPREAD_TOLERANCE = 1e-6      # N, simplex objective spread at termination
EVALUATION_BUDGET = 2000
MAX_RESTARTS = 100           # fresh simplexes at the incumbent until no gain
STEP_RELATIVE = 0.15         # initial simplex: 15% of each coordinate...
STEP_FLOOR_LENGTH = 0.010    # ...but never below 10 mm on lengths
STEP_FLOOR_PITCH = math.radians(4.0)   # or 4 degrees on the pitch


class InfeasibleSeedError(ValueError):
    """The optimizer was seeded outside the feasible region."""


@dataclass(frozen=True)
class DesignVector:
    """One candidate design."""

    pitch: float         # beta, rad
    mount_radius: float  # R_m, m
    tip_radius: float    # R_tip, m
    c1: float            # m
    c2: float            # m
    c3: float            # m

    def as_array(self) -> np.ndarray:
        return np.array([self.pitch, self.mount_radius, self.tip_radius,
                         self.c1, self.c2, self.c3])

    @staticmethod
    def from_array(x) -> "DesignVector":
        return DesignVector(*(float(v) for v in x))

    def geometry(self) -> WingGeometry:
        return WingGeometry(pitch=self.pitch, tip_radius=self.tip_radius,
                            c1=self.c1, c2=self.c2, c3=self.c3)


@dataclass(frozen=True)
class DesignContext:
    """Everything the objective needs besides the design vector."""

    coefficients: AeroCoefficients
    propeller: PropellerParams
    motor: MotorParams
    mass_model: MassModel
    voltage: float
    gravity: float = 9.81
    station_count: int = DEFAULT_STATION_COUNT
    penalty_weight: float = PENALTY_WEIGHT


@dataclass
class OptimizationReport:
    best: DesignVector
    objective: float                  # payload margin at best, N
    trim_at_best: TrimState
    iterations: int
    evaluations: int
    termination_reason: str           # "tolerance" or "budget"
    history: list = field(default_factory=list)   # (iteration, best payload) pairs
    simplex_history: list | None = None


# the flagship starting point: a plain rectangular wing at modest pitch,
# propellers mounted just outboard of the tip
DEFAULT_SEED = DesignVector(pitch=math.radians(21.0), mount_radius=0.235,
                            tip_radius=0.23, c1=0.035, c2=0.035, c3=0.035)


def constraint_violation(x: DesignVector) -> float:
    """Total violation magnitude in meters/radians; 0 for box-feasible designs.

    Spline undershoot is checked separately because it needs the geometry.
    """
    v = 0.0
    v += max(0.0, x.tip_radius - x.mount_radius)
    v += max(0.0, x.tip_radius - TIP_RADIUS_CAP)
    v += max(0.0, MIN_TIP_RADIUS - x.tip_radius)
    v += max(0.0, -x.c1) + max(0.0, -x.c2) + max(0.0, -x.c3)
    v += max(0.0, -x.pitch) + max(0.0, x.pitch - PITCH_CEILING)
    return v


def is_feasible(x: DesignVector) -> bool:
    if constraint_violation(x) > 0.0:
        return False
    return spline_minimum(x.geometry()) >= -SPLINE_DIP_SLACK


def objective(x: DesignVector, context: DesignContext) -> float:
    """Payload margin T_R - m*g in N; penalized for infeasible designs.

    A design with zero planform produces no thrust and no drag torque, so
    the trim is taken as T_R = 0 rather than asking the solver for an
    equilibrium that does not exist.
    """
    w = context.penalty_weight
    violation = constraint_violation(x)
    if violation > 0.0:
        return -(PENALTY_OFFSET + w * violation)

    geometry = x.geometry()
    undershoot = -min(spline_minimum(geometry), 0.0)
    if undershoot > SPLINE_DIP_SLACK:
        return -(PENALTY_OFFSET + w * undershoot)

    mass = robot_mass(geometry, context.mass_model, x.mount_radius)
    weight = mass * context.gravity
    if x.c1 == 0.0 and x.c2 == 0.0 and x.c3 == 0.0:
        return -weight

    unit = PropulsionUnit(propeller=context.propeller, motor=context.motor,
                          mount_radius=x.mount_radius)
    try:
        trim = solve_trim(context.voltage, geometry, context.coefficients, unit,
                          robot_mass=mass, gravity=context.gravity,
                          station_count=context.station_count)
    except (TrimError, StationConvergenceError):
        return -PENALTY_OFFSET
    return trim.thrust - weight


def initial_steps(seed: DesignVector) -> np.ndarray:
    """Per-axis simplex steps: max(15% of value, 10 mm / 4 degrees).

    The payload surface forms a long curved valley from any rectangular
    seed toward the optimum; a small simplex (few percent, mm floors)
    provably collapses on it within a couple hundred evaluations, so the
    starting simplex spans a deliberately coarse neighborhood.  A step
    flips sign when the positive perturbation leaves the feasible box but
    the negative one stays inside (keeps the starting simplex off the
    penalty cliff at active bounds).
    """
    x0 = seed.as_array()
    floors = np.array([STEP_FLOOR_PITCH] + [STEP_FLOOR_LENGTH] * 5)
    steps = np.maximum(STEP_RELATIVE * np.abs(x0), floors)
    for i in range(6):
        plus = DesignVector.from_array(x0 + steps[i] * np.eye(6)[i])
        minus = DesignVector.from_array(x0 - steps[i] * np.eye(6)[i])
        if constraint_violation(plus) > 0.0 and constraint_violation(minus) == 0.0:
            steps[i] = -steps[i]
    return steps


def optimize(
    seed: DesignVector,
    context: DesignContext,
    spread_tol: float = SPREAD_TOLERANCE,
    max_evals: int = EVALUATION_BUDGET,
    max_restarts: int = MAX_RESTARTS,
    keep_simplex_history: bool = False,
) -> OptimizationReport:
    """Nelder-Mead search for the maximum-payload design.

    Runs the simplex in step-scaled coordinates and restarts it at the
    incumbent best until a round brings no improvement or the evaluation
    budget runs out.  Restarting is what lets the search track the curved
    payload valley; a single simplex run stalls far short of it.
    Deterministic given seed and options.
    """
    if not is_feasible(seed):
        raise InfeasibleSeedError(f"seed design is infeasible: {seed}")

    cache: dict[tuple, float] = {}

    def negated(xarr) -> float:
        key = tuple(float(v) for v in xarr)
        if key not in cache:
            cache[key] = -objective(DesignVector.from_array(xarr), context)
        return cache[key]

    best_x = seed.as_array()
    best_f = negated(best_x)
    evaluations = 1
    iterations = 0
    history = []
    simplex_history = [] if keep_simplex_history else None
    converged = False

    for round_idx in range(max_restarts + 1):
        if max_evals - evaluations < 7:   # no room for a fresh simplex
            break
        steps = initial_steps(DesignVector.from_array(best_x))
        scale = np.abs(steps)
        result = nelder_mead(lambda z: negated(z * scale), best_x / scale,
                             np.sign(steps), spread_tol=spread_tol,
                             max_evals=max_evals - evaluations)
        evaluations += result.evaluations
        converged = result.converged
        history.extend((iterations + it, -f) for it, f in result.history)
        if simplex_history is not None:
            simplex_history.append([(it, -f) for it, f in result.history])
        iterations += result.iterations
        improved = result.fx < best_f - 1e-12
        if result.fx < best_f:
            best_x, best_f = result.x * scale, result.fx
        if evaluations >= max_evals or (round_idx > 0 and not improved):
            break

    best = DesignVector.from_array(best_x)
    geometry = best.geometry()
    mass = robot_mass(geometry, context.mass_model, best.mount_radius)
    unit = PropulsionUnit(propeller=context.propeller, motor=context.motor,
                          mount_radius=best.mount_radius)
    trim = solve_trim(context.voltage, geometry, context.coefficients, unit,
                      robot_mass=mass, gravity=context.gravity,
                      station_count=context.station_count)
    return OptimizationReport(
        best=best,
        objective=-best_f,
        trim_at_best=trim,
        iterations=iterations,
        evaluations=evaluations,
        termination_reason="tolerance" if converged else "budget",
        history=history,
        simplex_history=simplex_history,
    )
