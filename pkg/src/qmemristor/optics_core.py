"""Beam-splitter and Mach-Zehnder mode transforms.

A tunable beam splitter is synthesized from two fixed 50:50 elements
enclosing a phase retarder.  The composition theorem implemented by
``mz_effective`` states that the sandwich equals a single beam splitter with
effective mixing angle ``pi + theta - 2*phi_t``, up to a global phase
``theta/2`` that is exposed explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BeamSplitterSpec",
    "MZConfig",
    "bs_matrix",
    "retarder_matrix",
    "mz_effective",
    "MZResult",
    "is_unitary",
]


@dataclass(frozen=True)
class BeamSplitterSpec:
    """Mixing angle and the two phases of a general two-mode beam splitter.

    Angles are stored as given, without range reduction: feedback laws wind
    theta continuously over a drive period, and folding it back into
    [0, 2*pi) would corrupt the loop analysis downstream.
    """

    theta: float
    phi_t: float = 0.0
    phi_r: float = 0.0

    def __post_init__(self):
        for name in ("theta", "phi_t", "phi_r"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"BeamSplitterSpec: non-finite {name}={v!r}")

    @property
    def phi(self) -> float:
        """Single-phase form: the transmitted minus reflected phase."""
        return self.phi_t - self.phi_r


@dataclass(frozen=True)
class MZConfig:
    """Two identical 50:50 elements around a retarder of phase
    ``retarder_theta``.  The base spec's theta must be exactly pi/2."""

    retarder_theta: float
    base: BeamSplitterSpec

    def __post_init__(self):
        if not math.isfinite(self.retarder_theta):
            raise ValueError("MZConfig: non-finite retarder_theta")
        if self.base.theta != math.pi / 2:
            raise ValueError("MZConfig: base beam splitter must have theta = pi/2")

    @classmethod
    def balanced(cls, retarder_theta: float, phi_t: float = 0.0, phi_r: float = 0.0):
        return cls(
            retarder_theta=retarder_theta,
            base=BeamSplitterSpec(theta=math.pi / 2, phi_t=phi_t, phi_r=phi_r),
        )


def bs_matrix(spec: BeamSplitterSpec) -> np.ndarray:
    """2x2 unitary mode transform of a beam splitter.

    [[e^{i phi_t} cos(theta/2),  e^{i phi_r} sin(theta/2)],
     [-e^{-i phi_r} sin(theta/2), e^{-i phi_t} cos(theta/2)]]
    """
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    et = np.exp(1j * spec.phi_t)
    er = np.exp(1j * spec.phi_r)
    return np.array(
        [[et * c, er * s], [-np.conj(er) * s, np.conj(et) * c]], dtype=complex
    )


def retarder_matrix(theta: float) -> np.ndarray:
    """Phase retarder diag(1, e^{i theta}) on the second mode."""
    if not math.isfinite(theta):
        raise ValueError("retarder_matrix: non-finite theta")
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * theta)]], dtype=complex)


@dataclass(frozen=True)
class MZResult:
    effective: BeamSplitterSpec
    global_phase: float
    matrix: np.ndarray  # numeric product bs . retarder . bs
    defect: float  # max |product - e^{i phase} B(effective)|


def mz_effective(config: MZConfig) -> MZResult:
    """Compose bs . retarder . bs and return the equivalent single element.

    Analytic parameters: effective theta = pi + retarder_theta - 2*phi_t,
    effective phi_t = phi_t + pi/2, effective phi_r = phi_r, global phase
    retarder_theta / 2.  The numeric product is returned alongside with the
    entrywise defect against the analytic form (contract: <= 1e-12).
    """
    b = bs_matrix(config.base)
    product = b @ retarder_matrix(config.retarder_theta) @ b
    eff = BeamSplitterSpec(
        theta=math.pi + config.retarder_theta - 2.0 * config.base.phi_t,
        phi_t=config.base.phi_t + math.pi / 2.0,
        phi_r=config.base.phi_r,
    )
    phase = config.retarder_theta / 2.0
    analytic = np.exp(1j * phase) * bs_matrix(eff)
    defect = float(np.max(np.abs(product - analytic)))
    return MZResult(effective=eff, global_phase=phase, matrix=product, defect=defect)


def is_unitary(m: np.ndarray, tol: float) -> bool:
    """True iff m m^dagger deviates from the identity by <= tol (max norm)."""
    if tol <= 0:
        raise ValueError("is_unitary: tol must be positive")
    m = np.asarray(m, dtype=complex)
    dev = m @ m.conj().T - np.eye(m.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)
