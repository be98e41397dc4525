"""Command-line front end: unit conversion at the boundary, CSV emission.

Exit codes: 0 ok, 2 input/config error, 3 solver or model error,
4 infeasible optimization.  All numeric CSV output uses 9 significant
digits and LF line endings so golden files stay stable; identical inputs
produce byte-identical outputs.
"""

import argparse
import csv
import math
import sys

from .calibration import (IllPosedFitError, Measurement, MeasurementSet, fit,
                          rms_error)
from .config import (ConfigError, PROFILE_NAMES, RobotConfig, SCHEMA,
                     load_config, parse_config, profile, write_config)
from .design import (DesignContext, DesignVector, InfeasibleSeedError, optimize)
from .planform import planform_outline, robot_mass, wing_area
from .propulsion import (OperatingPointError, bem_thrust, induced_velocity,
                         solve_operating_point)
from .trim import TrimError, solve_trim, voltage_sweep
from .wingaero import StationConvergenceError, wing_coefficients

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_INFEASIBLE = 4


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else str(v) for v in row])


def _load(args) -> RobotConfig:
    return load_config(getattr(args, "config", None), args.profile)


def _apply_coefficient_file(config: RobotConfig, path: str | None) -> RobotConfig:
    if path is None:
        return config
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), base=config)


def _trim_report(config: RobotConfig, trim, mass: float, gravity: float) -> str:
    lines = [
        "hover trim",
        f"  voltage_V            {_fmt(trim.voltage)}",
        f"  omega_rev_rad_s      {_fmt(trim.omega_rev)}",
        f"  omega_rev_rev_s      {_fmt(trim.omega_rev / (2.0 * math.pi))}",
        f"  thrust_N             {_fmt(trim.thrust)}",
        f"  thrust_gram_force    {_fmt(trim.thrust / gravity * 1000.0)}",
        f"  torque_Q_Nm          {_fmt(trim.torque)}",
        f"  prop_thrust_N        {_fmt(trim.prop_state.thrust)}",
        f"  prop_omega_rad_s     {_fmt(trim.prop_state.omega)}",
        f"  prop_induced_m_s     {_fmt(trim.prop_state.induced_velocity)}",
        f"  axial_inflow_m_s     {_fmt(trim.prop_state.axial_inflow)}",
        f"  robot_mass_g         {_fmt(mass * 1000.0)}",
        f"  payload_margin_N     {_fmt(trim.payload_margin)}",
        f"  thrust_to_weight     {_fmt(trim.thrust / (mass * gravity))}",
    ]
    return "\n".join(lines) + "\n"


def cmd_predict(args) -> int:
    config = _apply_coefficient_file(_load(args), args.coefficients)
    geometry = config.geometry()
    coeffs = config.coefficients()
    unit = config.propulsion_unit()
    env = config.environment()
    mass = robot_mass(geometry, config.mass_model(), unit.mount_radius)
    if not 0.0 < args.voltage <= unit.motor.max_voltage:
        raise ConfigError(
            f"voltage {args.voltage} outside (0, {unit.motor.max_voltage}] V")
    trim = solve_trim(args.voltage, geometry, coeffs, unit,
                      robot_mass=mass, gravity=env.gravity,
                      station_count=config.station_count())
    report = _trim_report(config, trim, mass, env.gravity)
    sys.stdout.write(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(report)
    if args.span:
        aero = wing_coefficients(geometry, coeffs, config.station_count(),
                                 omega_ref=trim.omega_rev)
        rows = [(st.r, st.v_a, st.v_theta, math.degrees(st.alpha), st.dT_dr, st.dQ_dr)
                for st in aero.stations]
        _write_csv(args.span,
                   ["r_m", "v_a_m_s", "v_theta_m_s", "alpha_deg",
                    "dT_dr_N_per_m", "dQ_dr_Nm_per_m"], rows)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _apply_coefficient_file(_load(args), args.coefficients)
    geometry = config.geometry()
    unit = config.propulsion_unit()
    env = config.environment()
    mass = robot_mass(geometry, config.mass_model(), unit.mount_radius)
    result = voltage_sweep(args.v_min, args.v_max, args.steps,
                           geometry, config.coefficients(), unit,
                           robot_mass=mass, gravity=env.gravity,
                           station_count=config.station_count())
    for voltage, reason in result.failures:
        sys.stderr.write(f"trim failed at {voltage:.3f} V: {reason}\n")
    if not result.points:
        sys.stderr.write("no voltage in the sweep produced a trim\n")
        return EXIT_SOLVER
    rows = [(p.voltage, p.omega_rev, p.omega_rev**2, p.thrust * 1e3, p.torque * 1e3)
            for p in result.points]
    _write_csv(args.out, ["U_V", "omega_rad_s", "omega_sq", "thrust_mN", "torque_Nmm"],
               rows)
    return EXIT_OK


def cmd_prop_curve(args) -> int:
    config = _load(args)
    unit = config.propulsion_unit()
    rho = config.coefficients().rho
    if not 0.0 < args.voltage <= unit.motor.max_voltage:
        raise ConfigError(
            f"voltage {args.voltage} outside (0, {unit.motor.max_voltage}] V")
    if args.inflow_max <= 0.0:
        raise ConfigError("--inflow-max must be positive")
    static = solve_operating_point(args.voltage, 0.0, unit.propeller, unit.motor, rho)
    rows = []
    for i in range(args.points):
        u = args.inflow_max * i / (args.points - 1)
        state = solve_operating_point(args.voltage, u, unit.propeller, unit.motor, rho)
        v_i = induced_velocity(static.omega, u, unit.propeller, rho)
        fixed_omega_thrust = bem_thrust(static.omega, v_i, u, unit.propeller, rho)
        rows.append((u, state.thrust, state.omega, fixed_omega_thrust))
    _write_csv(args.out, ["inflow_m_s", "thrust_N", "omega_rad_s",
                          "thrust_const_omega_N"], rows)
    return EXIT_OK


def cmd_optimize(args) -> int:
    config = _load(args)
    geometry = config.geometry()
    unit = config.propulsion_unit()
    env = config.environment()
    seed = DesignVector(pitch=geometry.pitch, mount_radius=unit.mount_radius,
                        tip_radius=geometry.tip_radius,
                        c1=geometry.c1, c2=geometry.c2, c3=geometry.c3)
    context = DesignContext(coefficients=config.coefficients(),
                            propeller=unit.propeller, motor=unit.motor,
                            mass_model=config.mass_model(),
                            voltage=unit.motor.max_voltage,
                            gravity=env.gravity,
                            station_count=config.station_count())
    report = optimize(seed, context, max_evals=args.budget,
                      max_restarts=args.max_restarts)

    # quantize the design through file units so the emitted config is the
    # exact artifact every later prediction reproduces
    best_config = config.copy()
    best = report.best
    best_config.set("geometry", "pitch_deg", math.degrees(best.pitch))
    best_config.set("geometry", "r_tip_mm", best.tip_radius * 1000.0)
    best_config.set("geometry", "c1_mm", best.c1 * 1000.0)
    best_config.set("geometry", "c2_mm", best.c2 * 1000.0)
    best_config.set("geometry", "c3_mm", best.c3 * 1000.0)
    best_config.set("propulsion", "r_m_mm", best.mount_radius * 1000.0)
    text = write_config(best_config, header="optimized design")
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)

    if args.history:
        _write_csv(args.history, ["iteration", "best_objective_N"],
                   [(it, obj) for it, obj in report.history])
    if args.planform:
        _write_csv(args.planform,
                   ["r_m", "chord_m", "leading_edge_y_m", "trailing_edge_y_m"],
                   planform_outline(best_config.geometry()))

    final_geometry = best_config.geometry()
    final_unit = best_config.propulsion_unit()
    mass = robot_mass(final_geometry, best_config.mass_model(),
                      final_unit.mount_radius)
    trim = solve_trim(unit.motor.max_voltage, final_geometry,
                      best_config.coefficients(), final_unit,
                      robot_mass=mass, gravity=env.gravity,
                      station_count=best_config.station_count())
    sys.stdout.write(
        "optimized design\n"
        f"  pitch_deg            {_fmt(math.degrees(best.pitch))}\n"
        f"  r_m_mm               {_fmt(best.mount_radius * 1000.0)}\n"
        f"  r_tip_mm             {_fmt(best.tip_radius * 1000.0)}\n"
        f"  c1_mm                {_fmt(best.c1 * 1000.0)}\n"
        f"  c2_mm                {_fmt(best.c2 * 1000.0)}\n"
        f"  c3_mm                {_fmt(best.c3 * 1000.0)}\n"
        f"  wing_area_cm2        {_fmt(wing_area(final_geometry) * 1e4)}\n"
        f"  evaluations          {report.evaluations}\n"
        f"  iterations           {report.iterations}\n"
        f"  termination          {report.termination_reason}\n"
        f"  objective_payload_N  {_fmt(trim.payload_margin)}\n")
    sys.stdout.write(_trim_report(best_config, trim, mass, env.gravity))
    return EXIT_OK


def _read_measurements(path: str) -> list[tuple[str, float, float]]:
    expected = ["robot_id", "omega_rad_s", "thrust_mN"]
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise ConfigError(
                f"measurement CSV must start with header {','.join(expected)}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ConfigError(f"{path}:{line_no}: expected 3 columns")
            try:
                rows.append((row[0], float(row[1]), float(row[2]) * 1e-3))
            except ValueError as exc:
                raise ConfigError(f"{path}:{line_no}: {exc}") from exc
    if not rows:
        raise ConfigError(f"no measurement rows in {path}")
    return rows


def cmd_fit(args) -> int:
    import os

    config = _load(args)
    raw = _read_measurements(args.measurements)
    geometries = {}
    for robot_id in sorted({r[0] for r in raw}):
        reg_path = os.path.join(args.geometries, f"{robot_id}.cfg")
        if not os.path.exists(reg_path):
            raise ConfigError(
                f"robot id {robot_id!r} has no geometry file {reg_path}")
        geometries[robot_id] = load_config(reg_path, args.profile).geometry()

    records = [Measurement(robot_id=r[0], omega_rev=r[1], thrust=r[2]) for r in raw]
    data = MeasurementSet(records, geometries)
    initial = config.coefficients()
    result = fit(data, initial, station_count=config.station_count())

    coeff_config = RobotConfig(values={"aero": {
        "c_l1": result.coefficients.c_l1,
        "c_d0": result.coefficients.c_d0,
        "c_d1": result.coefficients.c_d1,
        "rho_kg_per_m3": result.coefficients.rho,
    }})
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(write_config(coeff_config, header="refitted aerodynamic coefficients"))

    lines = [
        "coefficient fit",
        f"  datapoints           {result.datapoints_used}",
        f"  initial_rms_mN       {_fmt(result.initial_rms_error * 1e3)}",
        f"  fitted_rms_mN        {_fmt(result.rms_error * 1e3)}",
        f"  c_l1                 {_fmt(result.coefficients.c_l1)}",
        f"  c_d0                 {_fmt(result.coefficients.c_d0)}",
        f"  c_d1                 {_fmt(result.coefficients.c_d1)}",
        "  per-robot rms_mN",
    ]
    for robot_id, value in result.per_robot_rms.items():
        lines.append(f"    {robot_id:<16} {_fmt(value * 1e3)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revwing",
        description="Design and analysis of samara-inspired revolving-wing robots")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_arg=True):
        if config_arg:
            p.add_argument("config", nargs="?", default=None,
                           help="config file overriding the profile per key")
        p.add_argument("--profile", default="crazyflie-bench", choices=PROFILE_NAMES,
                       help="built-in parameter profile (default: crazyflie-bench)")

    p = sub.add_parser("predict", help="hover trim at one drive voltage")
    add_common(p)
    p.add_argument("--voltage", type=float, required=True, help="drive voltage, V")
    p.add_argument("--coefficients", default=None,
                   help="aero coefficient config overriding the profile")
    p.add_argument("--out", default=None, help="also write the report here")
    p.add_argument("--span", default=None, help="write spanwise diagnostics CSV")
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("sweep", help="trim solutions over a voltage range")
    add_common(p)
    p.add_argument("--v-min", type=float, required=True)
    p.add_argument("--v-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--coefficients", default=None)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("prop-curve", help="propeller thrust/speed vs axial inflow")
    add_common(p)
    p.add_argument("--voltage", type=float, required=True)
    p.add_argument("--inflow-max", type=float, required=True,
                   help="largest axial inflow, m/s")
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(fn=cmd_prop_curve)

    p = sub.add_parser("optimize", help="search for the maximum-payload design")
    add_common(p)
    p.add_argument("--out", required=True, help="optimized design config path")
    p.add_argument("--history", default=None, help="convergence history CSV")
    p.add_argument("--planform", default=None, help="optimized planform CSV")
    p.add_argument("--budget", type=int, default=2000,
                   help="objective evaluation budget")
    p.add_argument("--max-restarts", type=int, default=100,
                   help="simplex restarts at the incumbent before giving up")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("fit", help="refit lift/drag coefficients from bench data")
    add_common(p, config_arg=False)
    p.add_argument("--measurements", required=True,
                   help="CSV with header robot_id,omega_rad_s,thrust_mN")
    p.add_argument("--geometries", required=True,
                   help="directory with one <robot_id>.cfg per robot")
    p.add_argument("--out", required=True, help="fitted coefficients config path")
    p.set_defaults(fn=cmd_fit)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except InfeasibleSeedError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE
    except (ConfigError, IllPosedFitError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (TrimError, StationConvergenceError, OperatingPointError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
