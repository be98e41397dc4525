"""revwing: design and analysis of samara-inspired revolving-wing robots.

A pair of flat airfoils revolving about a vertical axis produces the
vertical thrust; two horizontally mounted motor-driven propellers only
cancel the wings' drag torque.  The package couples momentum-theory /
blade-element wing aerodynamics, a propeller model under axial inflow,
and a first-order DC motor law into a hover-trim predictor, a payload
design optimizer, and a coefficient calibration fit.
"""

from .calibration import (FitResult, IllPosedFitError, Measurement,
                          MeasurementSet, fit, predict_thrust_at_speed,
                          rms_error)
from .config import (ConfigError, RobotConfig, load_config, parse_config,
                     profile, write_config)
from .design import (DesignContext, DesignVector, InfeasibleSeedError,
                     OptimizationReport, objective, optimize)
from .params import (AeroCoefficients, Environment, MotorParams,
                     PropellerParams, drag_coefficient, lift_coefficient)
from .planform import (MassModel, WingGeometry, chord_at, planform_outline,
                       robot_mass, spline_minimum, wing_area)
from .propulsion import (OperatingPointError, PropellerState, PropulsionUnit,
                         induced_velocity, propeller_torque,
                         solve_operating_point, thrust_map)
from .trim import (SweepResult, TrimError, TrimState, solve_trim,
                   voltage_sweep)
from .wingaero import (StationConvergenceError, StationSolution,
                       WingAeroResult, solve_station, wing_coefficients)

__version__ = "0.1.0"

__all__ = [
    "AeroCoefficients", "MotorParams", "PropellerParams", "Environment",
    "lift_coefficient", "drag_coefficient",
    "WingGeometry", "MassModel", "chord_at", "wing_area", "robot_mass",
    "spline_minimum", "planform_outline",
    "StationSolution", "WingAeroResult", "StationConvergenceError",
    "solve_station", "wing_coefficients",
    "PropulsionUnit", "PropellerState", "OperatingPointError",
    "induced_velocity", "propeller_torque", "solve_operating_point",
    "thrust_map",
    "TrimState", "TrimError", "SweepResult", "solve_trim", "voltage_sweep",
    "DesignVector", "DesignContext", "OptimizationReport",
    "InfeasibleSeedError", "objective", "optimize",
    "Measurement", "MeasurementSet", "FitResult", "IllPosedFitError",
    "predict_thrust_at_speed", "rms_error", "fit",
    "RobotConfig", "ConfigError", "load_config", "parse_config",
    "write_config", "profile",
]
