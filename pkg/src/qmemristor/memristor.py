"""Feedback loop: periodic drives, state-variable update laws, trajectories.

The memristive element is a beam splitter whose mixing angle theta is the
internal state variable.  A periodic drive produces an input observable, a
measurement of one output channel feeds the update law theta_dot = g, and
the sampled (input observable, output photon number) pairs trace the
hysteresis loops analyzed in :mod:`qmemristor.hysteresis`.

Three scenarios:

* coherent_x / linear: u(t) = x_max cos(omega t), theta_dot = (omega0/x0) u.
* squeezed_var / sqrt_sign: drive variance <x^2_in> = (1 - alpha cos^2)/2,
  theta_dot = sign(cos) (omega0/x0) sqrt(1/2 - <x^2_in>).
* fock_angle / fock_linear: qubit angle phi(t) = omega t,
  theta_dot = sqrt(2) omega0 <x_in> = omega0 sin(2 omega t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import rk4_integrate
from .optics_core import BeamSplitterSpec
from .states import (
    apply_bs_fock,
    apply_bs_gaussian,
    entanglement_entropy_fock,
    entanglement_entropy_gaussian,
    fock_qubit_input,
    squeezed_with_vacuum,
)

__all__ = [
    "DriveSignal",
    "FeedbackLaw",
    "Trajectory",
    "closed_form_theta",
    "run_scenario",
    "attach_entropy",
    "scenario_period",
    "COMPATIBLE_PAIRS",
]

DRIVE_KINDS = ("coherent_x", "squeezed_var", "fock_angle")
LAW_KINDS = ("linear", "sqrt_sign", "fock_linear")
COMPATIBLE_PAIRS = {
    ("linear", "coherent_x"),
    ("sqrt_sign", "squeezed_var"),
    ("fock_linear", "fock_angle"),
}


@dataclass(frozen=True)
class DriveSignal:
    """Periodic drive.  ``amplitude`` is x_max for coherent_x, the squeezing
    depth alpha in (0, 1) for squeezed_var, and unused for fock_angle."""

    kind: str
    amplitude: float
    omega: float

    def __post_init__(self):
        if self.kind not in DRIVE_KINDS:
            raise ValueError(f"DriveSignal: unknown kind {self.kind!r}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError("DriveSignal: omega must be positive")
        if not math.isfinite(self.amplitude):
            raise ValueError("DriveSignal: non-finite amplitude")
        if self.kind == "squeezed_var" and not 0.0 < self.amplitude < 1.0:
            raise ValueError("DriveSignal: squeezed_var amplitude must be in (0, 1)")


@dataclass(frozen=True)
class FeedbackLaw:
    """Update law theta_dot = g(drive observable)."""

    kind: str
    omega0: float = 1.0
    x0: float = 1.0
    theta0: float = math.pi / 2.0

    def __post_init__(self):
        if self.kind not in LAW_KINDS:
            raise ValueError(f"FeedbackLaw: unknown kind {self.kind!r}")
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise ValueError("FeedbackLaw: omega0 must be positive")
        if not (math.isfinite(self.x0) and self.x0 > 0):
            raise ValueError("FeedbackLaw: x0 must be positive")
        if not math.isfinite(self.theta0):
            raise ValueError("FeedbackLaw: non-finite theta0")


@dataclass(frozen=True)
class Trajectory:
    """Sampled feedback run over an integer number of drive periods.

    ``drive_value`` is the raw drive variable (u for coherent, <x^2_in> for
    squeezed, the qubit angle for Fock); ``input_obs`` is the loop x-axis
    observable (<x_in>, the vacuum-referenced variance difference, or
    <x_in> respectively).
    """

    t: np.ndarray
    drive_value: np.ndarray
    theta: np.ndarray
    n_out_b1: np.ndarray
    n_out_b2: np.ndarray
    input_obs: np.ndarray
    entropy: np.ndarray | None
    drive: DriveSignal
    law: FeedbackLaw
    periods: int
    steps_per_period: int
    period: float

    def __post_init__(self):
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("Trajectory: t must be strictly increasing")


def scenario_period(drive: DriveSignal) -> float:
    """Drive period: 2 pi / omega, except the Fock scenario whose
    observables have period pi / omega (everything depends on 2 omega t)."""
    if drive.kind == "fock_angle":
        return math.pi / drive.omega
    return 2.0 * math.pi / drive.omega


def _check_pair(law: FeedbackLaw, drive: DriveSignal):
    if (law.kind, drive.kind) not in COMPATIBLE_PAIRS:
        raise ValueError(
            f"incompatible pairing: law {law.kind!r} with drive {drive.kind!r}"
        )


def closed_form_theta(law: FeedbackLaw, drive: DriveSignal, t) -> np.ndarray:
    """Analytic theta(t) for each (law, drive) pairing."""
    _check_pair(law, drive)
    t = np.asarray(t, dtype=float)
    w = drive.omega
    if law.kind == "linear":
        k = drive.amplitude * law.omega0 / (law.x0 * w)
        return law.theta0 + k * np.sin(w * t)
    if law.kind == "sqrt_sign":
        k = math.sqrt(drive.amplitude / 2.0) * law.omega0 / (law.x0 * w)
        return law.theta0 + k * np.sin(w * t)
    return law.theta0 + (law.omega0 / (2.0 * w)) * (1.0 - np.cos(2.0 * w * t))


def _g_function(law: FeedbackLaw, drive: DriveSignal):
    """theta_dot = g(t); the instantaneous drive observable sets the rate."""
    w = drive.omega

    if law.kind == "linear":

        def g(t, _theta):
            return (law.omega0 / law.x0) * drive.amplitude * math.cos(w * t)

        return g

    if law.kind == "sqrt_sign":

        def g(t, _theta):
            q = 0.5 * (1.0 - drive.amplitude * math.cos(w * t) ** 2)
            radicand = 0.5 - q
            if radicand < -1e-15:
                raise ValueError(
                    f"sqrt_sign law: input variance above vacuum at t={t:g}"
                )
            sign = 1.0 if math.cos(w * t) >= 0.0 else -1.0
            return sign * (law.omega0 / law.x0) * math.sqrt(max(radicand, 0.0))

        return g

    def g(t, _theta):
        return law.omega0 * math.sin(2.0 * w * t)

    return g


def run_scenario(
    drive: DriveSignal,
    law: FeedbackLaw,
    periods: int = 1,
    steps_per_period: int = 4096,
) -> Trajectory:
    """Integrate the feedback law and sample all observables.

    The output photon split at each sample is an exact function of the
    instantaneous drive value and theta; the integrator carries no hidden
    state beyond theta.  Energy bookkeeping (n_out_b1 + n_out_b2 equals the
    input mean photon number) is asserted at every sample.
    """
    _check_pair(law, drive)
    if periods < 1:
        raise ValueError("run_scenario: periods must be >= 1")
    if steps_per_period < 256:
        raise ValueError("run_scenario: steps_per_period must be >= 256")

    period = scenario_period(drive)
    steps = periods * steps_per_period
    g = _g_function(law, drive)
    t, y = rk4_integrate(
        lambda ti, yi: [g(ti, yi[0])], [law.theta0], 0.0, periods * period, steps
    )
    theta = y[:, 0]
    w = drive.omega

    if drive.kind == "coherent_x":
        u = drive.amplitude * np.cos(w * t)
        n_in = u * u
        n_b1 = n_in * np.cos(theta / 2.0) ** 2
        n_b2 = n_in * np.sin(theta / 2.0) ** 2
        drive_value = u
        input_obs = u
    elif drive.kind == "squeezed_var":
        q = 0.5 * (1.0 - drive.amplitude * np.cos(w * t) ** 2)  # <x^2_in>
        v = 0.5 - q  # vacuum-referenced variance difference
        n_in = v * v / (1.0 - 2.0 * v)  # sinh^2 r with e^{-2r} = 2 q
        n_b1 = n_in * np.cos(theta / 2.0) ** 2
        n_b2 = n_in * np.sin(theta / 2.0) ** 2
        drive_value = q
        input_obs = v
    else:
        phi = w * t  # qubit angle
        n_in = np.sin(phi) ** 2
        n_b1 = n_in * np.sin(theta / 2.0) ** 2
        n_b2 = n_in * np.cos(theta / 2.0) ** 2
        drive_value = phi
        input_obs = np.sin(2.0 * phi) / math.sqrt(2.0)

    split_defect = np.max(np.abs(n_b1 + n_b2 - n_in))
    if split_defect > 1e-12:
        raise AssertionError(f"energy split defect {split_defect:g}")

    return Trajectory(
        t=t,
        drive_value=drive_value,
        theta=theta,
        n_out_b1=n_b1,
        n_out_b2=n_b2,
        input_obs=input_obs,
        entropy=None,
        drive=drive,
        law=law,
        periods=periods,
        steps_per_period=steps_per_period,
        period=period,
    )


def attach_entropy(traj: Trajectory, cutoff: int = 2) -> Trajectory:
    """Per-sample entanglement entropy of the instantaneous output state.

    Gaussian backend for the squeezed scenario, exact Fock backend for the
    qubit scenario.  The coherent scenario's entropy is identically zero up
    to truncation noise and is covered by a property test instead.
    """
    kind = traj.drive.kind
    if kind not in ("squeezed_var", "fock_angle"):
        raise ValueError(f"attach_entropy: unsupported scenario {kind!r}")
    ent = np.empty_like(traj.t)
    if kind == "squeezed_var":
        for i, (q, th) in enumerate(zip(traj.drive_value, traj.theta)):
            r = -0.5 * math.log(2.0 * q)
            out = apply_bs_gaussian(
                squeezed_with_vacuum(r), BeamSplitterSpec(theta=th)
            )
            ent[i] = entanglement_entropy_gaussian(out)
    else:
        for i, (phi, th) in enumerate(zip(traj.drive_value, traj.theta)):
            out = apply_bs_fock(
                fock_qubit_input(0.0, phi, cutoff=cutoff),
                BeamSplitterSpec(theta=th),
            )
            ent[i] = entanglement_entropy_fock(out)
    return Trajectory(
        t=traj.t,
        drive_value=traj.drive_value,
        theta=traj.theta,
        n_out_b1=traj.n_out_b1,
        n_out_b2=traj.n_out_b2,
        input_obs=traj.input_obs,
        entropy=ent,
        drive=traj.drive,
        law=traj.law,
        periods=traj.periods,
        steps_per_period=traj.steps_per_period,
        period=traj.period,
    )
