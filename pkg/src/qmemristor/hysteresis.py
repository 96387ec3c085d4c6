"""Hysteresis-loop analysis of feedback trajectories.

Extracts the input-output loop over one drive period, measures its unsigned
area by two independent methods (polygon shoelace after self-intersection
decomposition, and a Green-theorem time integral with analytic derivatives),
evaluates closed-form and asymptotic area predictions, detects the pinch at
the origin, and predicts sub-loop crossing counts from the drive frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .memristor import Trajectory
from .numerics import PlanarCurve, bessel_j2, decompose_loop

__all__ = [
    "LoopReport",
    "extract_loop",
    "area_integral_method",
    "CoherentAreaResult",
    "coherent_area_analytic",
    "squeezed_area_asymptotic",
    "fock_area_asymptotic",
    "fock_area_refined",
    "crossing_prediction",
    "is_pinched",
    "loop_report",
]

_AXES = ("input_obs", "n_out_b1", "n_out_b2", "theta", "drive_value")


@dataclass(frozen=True)
class LoopReport:
    area_geometric: float
    area_integral: float
    sub_loop_count: int
    crossing_count: int
    pinched: bool
    analytic_area: float | None = None
    analytic_validity: bool | None = None
    ratio_numeric_to_analytic: float | None = None
    ratio_variant: float | None = None

    def __post_init__(self):
        if self.area_geometric < 0 or self.area_integral < 0:
            raise ValueError("LoopReport: areas must be non-negative")


def _loop_slice(traj: Trajectory) -> slice:
    """Index window of the loop within the final drive period.

    The squeezed drive variance has half the period of the underlying
    squeezing modulation, so a full-period trace retraces itself exactly
    and encloses nothing; the loop proper is the lens swept between two
    consecutive zeros of the variance difference (the middle half of the
    period).  The other scenarios use the whole final period.
    """
    spp = traj.steps_per_period
    start = len(traj.t) - spp - 1
    if traj.drive.kind == "squeezed_var":
        if spp % 4:
            raise ValueError("squeezed loop extraction needs steps_per_period % 4 == 0")
        a = start + spp // 4
        return slice(a, a + spp // 2 + 1)
    return slice(start, len(traj.t))


def extract_loop(
    traj: Trajectory, x_axis: str = "input_obs", y_axis: str = "n_out_b1"
) -> PlanarCurve:
    """Closed input-output curve over the final full period."""
    if x_axis not in _AXES or y_axis not in _AXES:
        raise ValueError(f"extract_loop: axes must be in {_AXES}")
    spp = traj.steps_per_period
    if len(traj.t) < spp + 1:
        raise ValueError("extract_loop: trajectory shorter than one period")
    sl = _loop_slice(traj)
    x = getattr(traj, x_axis)[sl]
    y = getattr(traj, y_axis)[sl]
    return PlanarCurve(points=np.column_stack([x, y]), closed=True)


def area_integral_method(traj: Trajectory, scenario: str | None = None) -> float:
    """Loop area as a time integral, independent of the polygon geometry.

    Evaluates A = |(1/2) \\int (V dn/dt - n dV/dt) dt| over the loop window,
    which equals the enclosed area by Green's theorem.  Both derivatives are
    analytic: dn/dt carries a term from the state variable theta (through
    the update law g) and a term from the drive's own time dependence.  The
    drive term is essential; dropping it breaks the agreement with the
    geometric area because the conductance-like split f depends on time
    through the drive as well as through theta.  Trapezoidal quadrature.
    """
    kind = scenario or traj.drive.kind
    w = traj.drive.omega
    law = traj.law
    sl = _loop_slice(traj)
    t = traj.t[sl]
    theta = traj.theta[sl]
    n = traj.n_out_b1[sl]
    V = traj.input_obs[sl]
    half = np.sin(theta / 2.0) * np.cos(theta / 2.0)  # sin(theta)/2

    if kind == "coherent_x":
        u = V
        udot = -traj.drive.amplitude * w * np.sin(w * t)
        g = (law.omega0 / law.x0) * u
        dn = 2.0 * u * udot * np.cos(theta / 2.0) ** 2 - u * u * half * g
        dV = udot
    elif kind == "squeezed_var":
        v = V
        alpha = traj.drive.amplitude
        vdot = -(alpha / 2.0) * w * np.sin(2.0 * w * t)
        h = v * v / (1.0 - 2.0 * v)
        dh_dv = 2.0 * v * (1.0 - v) / (1.0 - 2.0 * v) ** 2
        g = np.sign(np.cos(w * t)) * (law.omega0 / law.x0) * np.sqrt(np.maximum(v, 0.0))
        dn = dh_dv * vdot * np.cos(theta / 2.0) ** 2 - h * half * g
        dV = vdot
    elif kind == "fock_angle":
        s2 = np.sin(2.0 * w * t)
        dV = math.sqrt(2.0) * w * np.cos(2.0 * w * t)
        g = law.omega0 * s2
        dn = w * s2 * np.sin(theta / 2.0) ** 2 + np.sin(w * t) ** 2 * half * g
    else:
        raise ValueError(f"area_integral_method: unknown scenario {kind!r}")

    return float(abs(0.5 * np.trapezoid(V * dn - n * dV, t)))


@dataclass(frozen=True)
class CoherentAreaResult:
    """Closed-form coherent loop area.

    ``area`` is the derived general form
    pi x_max^2 x0 (omega/omega0) sin(theta0) J2(k), k = x_max omega0/(x0 omega),
    confirmed against the geometric oracle.  ``variant_area`` is an
    alternative normalization, pi x_max^2/(2 x0) (omega/omega0) J2(k), kept
    for cross-reporting; the two differ by the constant 2 x0^2 sin(theta0).
    """

    area: float
    variant_area: float
    valid: bool
    k: float


def coherent_area_analytic(
    x_max: float, x0: float, omega0: float, omega: float, theta0: float
) -> CoherentAreaResult:
    if min(x_max, x0, omega0, omega) <= 0:
        raise ValueError("coherent_area_analytic: parameters must be positive")
    k = x_max * omega0 / (x0 * omega)
    j2 = bessel_j2(k)
    area = math.pi * x_max**2 * x0 * (omega / omega0) * math.sin(theta0) * j2
    variant = math.pi * x_max**2 / (2.0 * x0) * (omega / omega0) * j2
    valid = omega >= x_max * omega0 / (x0 * math.pi)
    return CoherentAreaResult(
        area=abs(area), variant_area=abs(variant), valid=valid, k=k
    )


def squeezed_area_asymptotic(alpha: float, omega: float) -> float:
    """Quoted squeezed-loop asymptote pi/(16 sqrt(2) omega sqrt(1-alpha)),
    in omega0 = x0 = 1 units.  Documented as valid only for large omega and
    alpha near 1; only the 1/omega scaling tracks the numerics tightly."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("squeezed_area_asymptotic: alpha must be in (0, 1)")
    if omega <= 0:
        raise ValueError("squeezed_area_asymptotic: omega must be positive")
    return math.pi / (16.0 * math.sqrt(2.0) * omega * math.sqrt(1.0 - alpha))


def fock_area_asymptotic(omega0: float, omega: float) -> float:
    """Quoted two-term Fock-loop asymptote pi/(4 sqrt 2) + pi omega0/(8 sqrt 2 omega)."""
    if omega0 <= 0 or omega <= 0:
        raise ValueError("fock_area_asymptotic: parameters must be positive")
    s = math.pi / math.sqrt(2.0)
    return s / 4.0 + s * omega0 / (8.0 * omega)


def fock_area_refined(
    omega0: float, omega: float, theta0: float = math.pi / 2.0
) -> float:
    """Derived two-term Fock-loop expansion:
    pi sin^2(theta0/2)/(2 sqrt 2) + pi omega0 sin(theta0)/(4 sqrt 2 omega).
    At theta0 = pi/2 the leading constant matches the quoted asymptote; the
    1/omega correction carries twice the quoted coefficient and tracks the
    geometric area markedly better at moderate frequencies."""
    if omega0 <= 0 or omega <= 0:
        raise ValueError("fock_area_refined: parameters must be positive")
    s = math.pi / math.sqrt(2.0)
    return (
        s * math.sin(theta0 / 2.0) ** 2 / 2.0
        + s * omega0 * math.sin(theta0) / (4.0 * omega)
    )


def crossing_prediction(scenario: str, **params) -> int:
    """Predicted per-lobe crossing count from the frequency thresholds.

    A count n is predicted when the frequency sits below the n-th threshold:
    coherent omega < x_max omega0 / (n x0 pi); squeezed
    omega < sqrt(alpha/2) omega0 / (n x0 pi); Fock rule inverted from
    omega > omega0 / ((4 n - 1) pi).  Returns 0 above all thresholds.
    """
    omega = params["omega"]
    omega0 = params.get("omega0", 1.0)
    x0 = params.get("x0", 1.0)
    if omega <= 0 or omega0 <= 0 or x0 <= 0:
        raise ValueError("crossing_prediction: parameters must be positive")
    if scenario == "coherent":
        k = params["x_max"] * omega0 / (x0 * omega)
        return max(math.ceil(k / math.pi) - 1, 0)
    if scenario == "squeezed":
        kappa = math.sqrt(params["alpha"] / 2.0) * omega0 / (x0 * omega)
        return max(math.ceil(kappa / math.pi) - 1, 0)
    if scenario == "fock":
        return max(math.ceil((omega0 / (omega * math.pi) + 1.0) / 4.0) - 1, 0)
    raise ValueError(f"crossing_prediction: unknown scenario {scenario!r}")


def is_pinched(curve: PlanarCurve, tol: float = 1e-6) -> bool:
    """True iff the loop passes through the origin with both lobes meeting
    there: some sample lies within tol of the origin, and every sample whose
    x-coordinate is within tol of zero also has |y| <= tol (the curve does
    not cross the output axis away from the origin)."""
    pts = curve.points
    dist = np.hypot(pts[:, 0], pts[:, 1])
    if float(np.min(dist)) > tol:
        return False
    near_axis = np.abs(pts[:, 0]) <= tol
    return bool(np.all(np.abs(pts[near_axis, 1]) <= tol))


def loop_report(traj: Trajectory, pinch_tol: float = 1e-6) -> LoopReport:
    """Full loop analysis: both area methods, decomposition, pinch flag,
    and (coherent scenario) the closed-form comparison."""
    curve = extract_loop(traj)
    dec = decompose_loop(curve)
    area_geo = float(np.sum(np.abs(dec.signed_areas)))
    area_int = area_integral_method(traj)
    analytic = validity = ratio = ratio_variant = None
    if traj.drive.kind == "coherent_x":
        res = coherent_area_analytic(
            x_max=traj.drive.amplitude,
            x0=traj.law.x0,
            omega0=traj.law.omega0,
            omega=traj.drive.omega,
            theta0=traj.law.theta0,
        )
        analytic = res.area
        validity = res.valid
        if res.area > 0:
            ratio = area_geo / res.area
        if res.variant_area > 0:
            ratio_variant = area_geo / res.variant_area
    return LoopReport(
        area_geometric=area_geo,
        area_integral=area_int,
        sub_loop_count=dec.sub_loop_count,
        crossing_count=dec.crossing_count,
        pinched=is_pinched(curve, pinch_tol),
        analytic_area=analytic,
        analytic_validity=validity,
        ratio_numeric_to_analytic=ratio,
        ratio_variant=ratio_variant,
    )
