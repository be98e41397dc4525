"""Wing planform: spline chord profile, area and robot mass model.

The chord distribution is a natural cubic spline through four knots: the
root chord c1 at 0.15*R_tip, two free chords c2 and c3 at one and two
thirds of the exposed span, and exactly zero at the tip.  Negative spline
excursions are clamped to zero chord; the design optimizer additionally
penalizes them so they never survive into a returned design.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

__all__ = [
    "WingGeometry",
    "MassModel",
    "chord_at",
    "wing_area",
    "robot_mass",
    "spline_minimum",
    "planform_outline",
]

_AREA_NODES = 4097  # composite-trapezoid nodes for wing_area


@dataclass(frozen=True)
class WingGeometry:
    """One pair of flat revolving airfoils."""

    pitch: float              # wing pitch angle beta, rad
    tip_radius: float         # semi-span R_tip, m
    c1: float                 # chord at the root station, m
    c2: float                 # chord at root + span/3, m
    c3: float                 # chord at root + 2*span/3, m
    root_fraction: float = 0.15   # root cut-out as a fraction of tip_radius
    airfoil_count: int = 2        # N, number of airfoils

    def __post_init__(self):
        if not 0.0 < self.pitch < math.pi / 2:
            raise ValueError(f"pitch must lie in (0, pi/2), got {self.pitch}")
        if self.tip_radius <= 0.0:
            raise ValueError(f"tip_radius must be positive, got {self.tip_radius}")
        if min(self.c1, self.c2, self.c3) < 0.0:
            raise ValueError("control chords must be nonnegative")
        if not 0.0 < self.root_fraction < 1.0:
            raise ValueError(f"root_fraction must lie in (0, 1), got {self.root_fraction}")
        if self.airfoil_count < 1:
            raise ValueError("airfoil_count must be >= 1")

    @property
    def root_radius(self) -> float:
        return self.root_fraction * self.tip_radius

    @property
    def knot_radii(self) -> tuple[float, float, float, float]:
        root = self.root_radius
        span = self.tip_radius - root
        return (root, root + span / 3.0, root + 2.0 * span / 3.0, self.tip_radius)

    @property
    def knot_chords(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.c3, 0.0)


@dataclass(frozen=True)
class MassModel:
    """Mass bookkeeping for the payload objective."""

    rod_linear_density: float   # airframe carbon rod, kg/m
    wing_areal_density: float   # wing film + spars, kg/m^2
    fixed_mass: float           # motors, propellers, electronics, battery, mounts, kg

    def __post_init__(self):
        if min(self.rod_linear_density, self.wing_areal_density, self.fixed_mass) < 0.0:
            raise ValueError("mass model entries must be nonnegative")


@functools.lru_cache(maxsize=512)
def _spline(geometry: WingGeometry) -> CubicSpline:
    return CubicSpline(geometry.knot_radii, geometry.knot_chords, bc_type="natural")


def chord_at(geometry: WingGeometry, r: float) -> float:
    """Chord length at radial station r, clamped at zero from below.

    r must lie within [root_radius, tip_radius] (a relative slack of 1e-12
    absorbs floating-point endpoint noise).
    """
    root, tip = geometry.root_radius, geometry.tip_radius
    slack = 1e-12 * tip
    if r < root - slack or r > tip + slack:
        raise ValueError(f"station r={r} outside wing span [{root}, {tip}]")
    if r >= tip:   # the tip chord is structurally zero; spare it spline noise
        return 0.0
    r = max(r, root)
    return max(float(_spline(geometry)(r)), 0.0)


def spline_minimum(geometry: WingGeometry, samples: int = 512) -> float:
    """Minimum of the unclamped chord spline over the span.

    Negative values flag spline undershoot between knots; the optimizer
    uses the magnitude as a constraint violation.
    """
    rs = np.linspace(geometry.root_radius, geometry.tip_radius, samples)
    return float(_spline(geometry)(rs).min())


def wing_area(geometry: WingGeometry, nodes: int = _AREA_NODES) -> float:
    """Planform area of one wing, m^2 (trapezoid rule on the clamped chord)."""
    rs = np.linspace(geometry.root_radius, geometry.tip_radius, nodes)
    chords = np.maximum(_spline(geometry)(rs), 0.0)
    return float(np.trapezoid(chords, rs))


def robot_mass(geometry: WingGeometry, mass_model: MassModel, mount_radius: float) -> float:
    """Total robot mass, kg.

    The airframe rod spans motor to motor (length 2*mount_radius) and the
    areal density covers both wings.
    """
    if mount_radius < 0.0:
        raise ValueError("mount_radius must be nonnegative")
    rod = mass_model.rod_linear_density * 2.0 * mount_radius
    wings = mass_model.wing_areal_density * 2.0 * wing_area(geometry)
    return mass_model.fixed_mass + rod + wings


def planform_outline(geometry: WingGeometry, samples: int = 200):
    """(r, chord, leading_edge_y, trailing_edge_y) rows for plotting.

    The leading edge is a straight line along the spar (y = 0); the
    trailing edge hangs a chord length below it.
    """
    rs = np.linspace(geometry.root_radius, geometry.tip_radius, samples)
    rows = []
    for r in rs:
        c = chord_at(geometry, float(r))
        rows.append((float(r), c, 0.0, -c))
    return rows
