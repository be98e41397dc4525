"""Physical parameters and the flat-plate aerodynamic coefficient model.

Everything in this package works in strict SI units (m, kg, s, N, rad,
rad/s, V, Ohm).  Unit conversion (mm, grams, degrees, mN) happens only at
the config-file boundary, never inside the solvers.
"""

import math
from dataclasses import dataclass

__all__ = [
    "AeroCoefficients",
    "MotorParams",
    "PropellerParams",
    "Environment",
    "lift_coefficient",
    "drag_coefficient",
    "BENCH_AERO",
    "BENCH_AERO_REFIT",
    "BENCH_MOTOR",
    "BENCH_PROPELLER",
    "STANDARD_ENVIRONMENT",
]


@dataclass(frozen=True)
class AeroCoefficients:
    """Flat-plate quasi-steady lift/drag model for a revolving wing.

    The wing operates at high angles of attack and low Reynolds number,
    where lift follows ``c_l1 * sin(2*alpha)`` and drag
    ``c_d0 + c_d1 * (1 - cos(2*alpha))``.
    """

    c_l1: float          # lift amplitude, dimensionless
    c_d0: float          # parasitic drag at alpha = 0, dimensionless
    c_d1: float          # drag amplitude, dimensionless
    rho: float = 1.2     # air density, kg/m^3

    def __post_init__(self):
        if self.rho <= 0.0:
            raise ValueError(f"air density must be positive, got {self.rho}")
        if self.c_l1 <= 0.0:
            raise ValueError(f"c_l1 must be positive, got {self.c_l1}")
        if self.c_d0 < 0.0 or self.c_d1 < 0.0:
            raise ValueError("drag coefficients must be nonnegative")


@dataclass(frozen=True)
class MotorParams:
    """First-order steady-state DC motor: U = I*R_i + k*omega, torque = k*I."""

    resistance: float    # internal resistance R_i, Ohm
    back_emf_k: float    # back-EMF / torque constant k, V*s/rad
    max_voltage: float   # highest drive voltage the solver accepts, V

    def __post_init__(self):
        for name in ("resistance", "back_emf_k", "max_voltage"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class PropellerParams:
    """Lumped blade-element description of a small fixed-pitch propeller.

    a0..a2 fold the blade pitch/chord distribution into three empirical
    constants; kappa is the induced power factor covering wake rotation
    and tip losses.
    """

    radius: float          # propeller radius R_p, m
    blade_count: int = 2   # blades per propeller
    a0: float = 0.3633
    a1: float = 1.9960
    a2: float = 0.0022
    kappa: float = 1.87

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError(f"propeller radius must be positive, got {self.radius}")
        if self.blade_count < 1:
            raise ValueError(f"blade_count must be >= 1, got {self.blade_count}")
        if self.a0 <= 0.0:
            raise ValueError("a0 must be positive")
        if self.a1 < 0.0 or self.a2 < 0.0:
            raise ValueError("a1 and a2 must be nonnegative")
        if self.kappa < 1.0:
            raise ValueError(f"kappa must be >= 1, got {self.kappa}")


@dataclass(frozen=True)
class Environment:
    """Gravity and free-stream state.  This release models hover only."""

    gravity: float = 9.81      # m/s^2
    free_stream: float = 0.0   # downward free-stream velocity, m/s; must be 0

    def __post_init__(self):
        if self.gravity <= 0.0:
            raise ValueError("gravity must be positive")
        if self.free_stream != 0.0:
            raise ValueError(
                "non-zero free-stream velocity is not supported (hover-only solver)"
            )


def lift_coefficient(alpha: float, coeffs: AeroCoefficients) -> float:
    """Flat-plate lift coefficient c_l1*sin(2*alpha).  Odd in alpha."""
    return coeffs.c_l1 * math.sin(2.0 * alpha)


def drag_coefficient(alpha: float, coeffs: AeroCoefficients) -> float:
    """Flat-plate drag coefficient c_d0 + c_d1*(1 - cos(2*alpha)).  Even in alpha."""
    return coeffs.c_d0 + coeffs.c_d1 * (1.0 - math.cos(2.0 * alpha))


# "crazyflie-bench" parameter set: 7x16 mm coreless motors with the matched
# 23-mm propellers, plus literature flat-plate coefficients.  These are the
# defaults every profile starts from.
BENCH_AERO = AeroCoefficients(c_l1=1.72, c_d0=0.11, c_d1=1.94, rho=1.2)

# Coefficients refitted against bench thrust measurements of four prototypes.
BENCH_AERO_REFIT = AeroCoefficients(c_l1=2.67, c_d0=0.22, c_d1=2.58, rho=1.2)

BENCH_MOTOR = MotorParams(resistance=1.58, back_emf_k=1.1e-3, max_voltage=3.5)

BENCH_PROPELLER = PropellerParams(radius=0.023, blade_count=2,
                                  a0=0.3633, a1=1.9960, a2=0.0022, kappa=1.87)

STANDARD_ENVIRONMENT = Environment(gravity=9.81, free_stream=0.0)
