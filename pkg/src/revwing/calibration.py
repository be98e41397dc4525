"""Refit of the flat-plate lift/drag coefficients from bench thrust data.

Bench rigs measure (revolving speed, thrust) pairs per robot; the model
predicts thrust from the measured speed directly through
T_R = C_T,R(geometry, coefficients) * Omega^2, with no motor or propeller
model in the loop.  The fit searches (c_l1, c_d0, c_d1) to minimize the
root-mean-square thrust error in newtons across all records, holding
every actuator parameter frozen.
"""

import functools
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .params import AeroCoefficients
from .planform import WingGeometry
from .simplex import nelder_mead
from .wingaero import DEFAULT_STATION_COUNT, wing_coefficients

__all__ = [
    "Measurement",
    "MeasurementSet",
    "FitResult",
    "IllPosedFitError",
    "predict_thrust_at_speed",
    "rms_error",
    "fit",
]

FIT_SPREAD_TOL = 1e-9    # N, simplex spread on the RMS objective
FIT_EVAL_BUDGET = 400
_COEFF_PENALTY = 1e3     # per unit of negative-coefficient violation


class IllPosedFitError(ValueError):
    """The measurement set cannot constrain the three coefficients."""


@dataclass(frozen=True)
class Measurement:
    robot_id: str
    omega_rev: float   # rad/s
    thrust: float      # N

    def __post_init__(self):
        if self.omega_rev <= 0.0:
            raise ValueError(f"omega_rev must be positive, got {self.omega_rev}")
        if self.thrust <= 0.0:
            raise ValueError(f"thrust must be positive, got {self.thrust}")


class MeasurementSet:
    """Bench records plus the geometry registry resolving each robot id."""

    def __init__(self, records, geometries: Mapping[str, WingGeometry]):
        self.records: tuple[Measurement, ...] = tuple(records)
        self.geometries: Mapping[str, WingGeometry] = MappingProxyType(dict(geometries))
        if not self.records:
            raise ValueError("measurement set is empty")
        missing = sorted({m.robot_id for m in self.records} - set(self.geometries))
        if missing:
            raise ValueError(f"no geometry registered for robot id(s): {', '.join(missing)}")

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class FitResult:
    coefficients: AeroCoefficients
    rms_error: float            # N
    initial_rms_error: float    # N, at the starting coefficients
    per_robot_rms: Mapping[str, float]
    datapoints_used: int
    evaluations: int


@functools.lru_cache(maxsize=4096)
def _thrust_coefficient(geometry: WingGeometry, coeffs: AeroCoefficients,
                        station_count: int) -> float:
    return wing_coefficients(geometry, coeffs, station_count).c_t_r


def predict_thrust_at_speed(geometry: WingGeometry, coeffs: AeroCoefficients,
                            omega_rev: float,
                            station_count: int = DEFAULT_STATION_COUNT) -> float:
    """Model thrust at a measured revolving speed, N.

    C_T,R is computed once per (geometry, coefficients) pair and cached, so
    sweeping speeds over a fixed robot costs one spanwise solve.
    """
    if omega_rev <= 0.0:
        raise ValueError("omega_rev must be positive")
    return _thrust_coefficient(geometry, coeffs, station_count) * omega_rev**2


def _sorted_records(data: MeasurementSet) -> list[Measurement]:
    # fixed reduction order makes the fit independent of record permutation
    return sorted(data.records, key=lambda m: (m.robot_id, m.omega_rev, m.thrust))


def rms_error(data: MeasurementSet, coeffs: AeroCoefficients,
              station_count: int = DEFAULT_STATION_COUNT) -> float:
    """Root-mean-square thrust prediction error over all records, N."""
    records = _sorted_records(data)
    total = 0.0
    for m in records:
        predicted = predict_thrust_at_speed(data.geometries[m.robot_id], coeffs,
                                            m.omega_rev, station_count)
        total += (predicted - m.thrust) ** 2
    return math.sqrt(total / len(records))


def _per_robot_rms(data: MeasurementSet, coeffs: AeroCoefficients,
                   station_count: int) -> dict[str, float]:
    sums: dict[str, list] = {}
    for m in _sorted_records(data):
        predicted = predict_thrust_at_speed(data.geometries[m.robot_id], coeffs,
                                            m.omega_rev, station_count)
        entry = sums.setdefault(m.robot_id, [0.0, 0])
        entry[0] += (predicted - m.thrust) ** 2
        entry[1] += 1
    return {rid: math.sqrt(sq / n) for rid, (sq, n) in sorted(sums.items())}


def fit(data: MeasurementSet, initial: AeroCoefficients,
        station_count: int = DEFAULT_STATION_COUNT,
        spread_tol: float = FIT_SPREAD_TOL,
        max_evals: int = FIT_EVAL_BUDGET) -> FitResult:
    """Nelder-Mead refit of (c_l1, c_d0, c_d1) minimizing RMS thrust error.

    Air density and all actuator parameters stay frozen.  Deterministic
    given the data and the starting point; the result never has a worse
    RMS than the start because the start is a vertex of the first simplex.
    """
    if len(data) < 3:
        raise IllPosedFitError(
            f"need at least 3 datapoints for 3 coefficients, got {len(data)}")
    distinct = {(m.robot_id, m.omega_rev) for m in data.records}
    if len(distinct) == 1:
        raise IllPosedFitError(
            "all records share one robot and one speed; the fit is degenerate")

    rho = initial.rho

    def objective(x) -> float:
        c_l1, c_d0, c_d1 = (float(v) for v in x)
        violation = max(0.0, 1e-6 - c_l1) + max(0.0, -c_d0) + max(0.0, -c_d1)
        if violation > 0.0:
            return 1.0 + _COEFF_PENALTY * violation
        coeffs = AeroCoefficients(c_l1=c_l1, c_d0=c_d0, c_d1=c_d1, rho=rho)
        return rms_error(data, coeffs, station_count)

    x0 = np.array([initial.c_l1, initial.c_d0, initial.c_d1])
    steps = np.maximum(0.05 * np.abs(x0), 0.01)
    result = nelder_mead(objective, x0, steps, spread_tol=spread_tol,
                         max_evals=max_evals)

    fitted = AeroCoefficients(c_l1=float(result.x[0]), c_d0=float(result.x[1]),
                              c_d1=float(result.x[2]), rho=rho)
    initial_rms = rms_error(data, initial, station_count)
    return FitResult(
        coefficients=fitted,
        rms_error=result.fx,
        initial_rms_error=initial_rms,
        per_robot_rms=MappingProxyType(_per_robot_rms(data, fitted, station_count)),
        datapoints_used=len(data),
        evaluations=result.evaluations,
    )
