"""Quantum-state backends and their beam-splitter evolution.

Three representations of two optical modes:

* ``CoherentPair``: a pair of complex displacement amplitudes (exact for
  coherent inputs, which a beam splitter maps to coherent outputs).
* ``GaussianState``: quadrature means and covariance matrix, ordering
  (x1, p1, x2, p2), convention x = (a + a^dag)/sqrt(2) so the vacuum
  covariance is I/2.
* ``FockTwoMode``: a complex amplitude grid on a truncated photon-number
  basis; beam-splitter evolution is exact per total-photon block.

All operations return new values; nothing mutates in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optics_core import BeamSplitterSpec

__all__ = [
    "CoherentPair",
    "GaussianState",
    "FockTwoMode",
    "apply_bs_coherent",
    "squeezed_with_vacuum",
    "apply_bs_gaussian",
    "gaussian_observables",
    "fock_qubit_input",
    "apply_bs_fock",
    "fock_observables",
    "entanglement_entropy_fock",
    "entanglement_entropy_gaussian",
    "postselect_mode2",
    "coherent_fock_amps",
    "squeezed_fock_amps",
    "two_mode_product",
    "symplectic_form",
]


@dataclass(frozen=True)
class CoherentPair:
    """Displacement amplitudes of a two-mode coherent state."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"CoherentPair: non-finite {name}")

    @property
    def total_photons(self) -> float:
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2


def symplectic_form() -> np.ndarray:
    """Standard symplectic form Omega for ordering (x1, p1, x2, p2)."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((4, 4))
    out[:2, :2] = j
    out[2:, 2:] = j
    return out


@dataclass(frozen=True)
class GaussianState:
    """Two-mode Gaussian state: 4 quadrature means and 4x4 covariance."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.shape != (4,) or cov.shape != (4, 4):
            raise ValueError("GaussianState: mean must be (4,), cov (4, 4)")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise ValueError("GaussianState: non-finite entries")
        if np.max(np.abs(cov - cov.T)) > 1e-12:
            raise ValueError("GaussianState: covariance not symmetric")
        # uncertainty relation: cov + (i/2) Omega must be positive semidefinite
        evals = np.linalg.eigvalsh(cov + 0.5j * symplectic_form())
        if np.min(evals) < -1e-10:
            raise ValueError("GaussianState: uncertainty relation violated")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @classmethod
    def vacuum(cls) -> "GaussianState":
        return cls(mean=np.zeros(4), cov=0.5 * np.eye(4))


@dataclass(frozen=True)
class FockTwoMode:
    """Truncated two-mode photon-number state, amps[n1, n2]."""

    amps: np.ndarray
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("FockTwoMode: cutoff must be >= 1")
        amps = np.asarray(self.amps, dtype=complex)
        d = self.cutoff + 1
        if amps.shape != (d, d):
            raise ValueError(f"FockTwoMode: amps must have shape ({d}, {d})")
        if not np.all(np.isfinite(amps)):
            raise ValueError("FockTwoMode: non-finite amplitudes")
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def apply_bs_coherent(pair: CoherentPair, spec: BeamSplitterSpec) -> CoherentPair:
    """Beam-splitter action on coherent amplitudes (exact).

    Output: (alpha cos(theta/2) + beta sin(theta/2) e^{i phi},
             beta cos(theta/2) - alpha sin(theta/2) e^{-i phi})
    with phi = phi_t - phi_r.  Total photon number is conserved.
    """
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    e = np.exp(1j * spec.phi)
    return CoherentPair(
        alpha=pair.alpha * c + pair.beta * s * e,
        beta=pair.beta * c - pair.alpha * s * np.conj(e),
    )


def squeezed_with_vacuum(r: float, phi: float = 0.0) -> GaussianState:
    """Squeezed vacuum in mode 1 (squeezing parameter r, phase phi),
    vacuum in mode 2, zero means.  For phi = 0 the mode-1 covariance is
    diag(e^{-2r}/2, e^{2r}/2)."""
    if r < 0:
        raise ValueError("squeezed_with_vacuum: r must be >= 0")
    h = phi / 2.0
    rot = np.array([[math.cos(h), -math.sin(h)], [math.sin(h), math.cos(h)]])
    core = np.diag([math.exp(-2.0 * r), math.exp(2.0 * r)]) * 0.5
    cov = 0.5 * np.eye(4)
    cov[:2, :2] = rot @ core @ rot.T
    return GaussianState(mean=np.zeros(4), cov=cov)


def _bs_symplectic(spec: BeamSplitterSpec) -> np.ndarray:
    """4x4 real symplectic matrix of the BS mode transform."""
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    e = np.exp(1j * spec.phi)
    m = np.array([[c, s * e], [-s * np.conj(e), c]], dtype=complex)
    out = np.zeros((4, 4))
    for k in range(2):
        for j in range(2):
            re, im = m[k, j].real, m[k, j].imag
            out[2 * k : 2 * k + 2, 2 * j : 2 * j + 2] = [[re, -im], [im, re]]
    return out


def apply_bs_gaussian(state: GaussianState, spec: BeamSplitterSpec) -> GaussianState:
    """Symplectic BS action: mean -> S mean, cov -> S cov S^T."""
    s = _bs_symplectic(spec)
    return GaussianState(mean=s @ state.mean, cov=s @ state.cov @ s.T)


def gaussian_observables(state: GaussianState, mode: int):
    """(mean_x, var_x, mean_n) of one mode of a Gaussian state."""
    if mode not in (1, 2):
        raise ValueError("gaussian_observables: mode must be 1 or 2")
    i = 2 * (mode - 1)
    mx, mp = state.mean[i], state.mean[i + 1]
    vx, vp = state.cov[i, i], state.cov[i + 1, i + 1]
    mean_n = 0.5 * (vx + vp - 1.0) + 0.5 * (mx * mx + mp * mp)
    return float(mx), float(vx), float(mean_n)


def fock_qubit_input(alpha_phase: float, phi: float, cutoff: int = 1) -> FockTwoMode:
    """(e^{i alpha} cos(phi) |0> + sin(phi) |1>) in mode 1, vacuum in mode 2."""
    if cutoff < 1:
        raise ValueError("fock_qubit_input: cutoff must be >= 1")
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[0, 0] = np.exp(1j * alpha_phase) * math.cos(phi)
    amps[1, 0] = math.sin(phi)
    return FockTwoMode(amps=amps, cutoff=cutoff)


def _block_transform(n_total: int, c: float, s: float, e: complex) -> np.ndarray:
    """Unitary on the total-photon-number-N block, indexed by the photon
    count in mode 1.  Built from the creation-operator transform
    a1^dag -> c a1^dag - e^{-i phi} s a2^dag,
    a2^dag -> e^{i phi} s a1^dag + c a2^dag
    via binomial expansion of the two operator powers.
    """
    n = n_total
    A, C = c, -np.conj(e) * s
    B, D = e * s, c
    u = np.zeros((n + 1, n + 1), dtype=complex)
    lg = [math.lgamma(k + 1) for k in range(n + 1)]
    for k in range(n + 1):  # input |k, n-k>
        p1 = np.array([math.comb(k, i) * A**i * C ** (k - i) for i in range(k + 1)])
        p2 = np.array(
            [math.comb(n - k, i) * B**i * D ** (n - k - i) for i in range(n - k + 1)]
        )
        coeffs = np.convolve(p1, p2)  # coefficient of (a1^dag)^m
        for m in range(n + 1):
            scale = math.exp(0.5 * (lg[m] + lg[n - m] - lg[k] - lg[n - k]))
            u[m, k] = coeffs[m] * scale
    return u


def apply_bs_fock(state: FockTwoMode, spec: BeamSplitterSpec) -> FockTwoMode:
    """Exact blockwise BS evolution on the truncated Fock grid.

    Blocks of fixed total photon number do not mix, so the evolution is
    exact for any population confined below the cutoff.  Blocks that extend
    past the cutoff are evolved with the out-of-range amplitudes taken as
    zero; keep the cutoff high enough that those blocks are unpopulated.
    """
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    e = np.exp(1j * spec.phi)
    d = state.cutoff + 1
    out = np.zeros((d, d), dtype=complex)
    for n_total in range(2 * state.cutoff + 1):
        lo = max(0, n_total - state.cutoff)
        hi = min(n_total, state.cutoff)
        vec = np.zeros(n_total + 1, dtype=complex)
        for n1 in range(lo, hi + 1):
            vec[n1] = state.amps[n1, n_total - n1]
        if not np.any(vec):
            continue
        res = _block_transform(n_total, c, s, e) @ vec
        for n1 in range(lo, hi + 1):
            out[n1, n_total - n1] = res[n1]
    return FockTwoMode(amps=out, cutoff=state.cutoff)


def fock_observables(state: FockTwoMode, mode: int):
    """(mean_x, mean_n) of one mode, x = (a + a^dag)/sqrt(2)."""
    if mode not in (1, 2):
        raise ValueError("fock_observables: mode must be 1 or 2")
    amps = state.amps if mode == 1 else state.amps.T
    d = state.cutoff + 1
    ns = np.arange(d)
    mean_n = float(np.sum(ns[:, None] * np.abs(amps) ** 2))
    # <a> = sum conj(C[n-1, m]) sqrt(n) C[n, m]
    a_exp = np.sum(np.conj(amps[:-1, :]) * np.sqrt(ns[1:])[:, None] * amps[1:, :])
    mean_x = math.sqrt(2.0) * float(a_exp.real)
    return mean_x, mean_n


def entanglement_entropy_fock(state: FockTwoMode) -> float:
    """Von Neumann entropy (nats) of the mode-1 reduction of a pure state."""
    norm = state.norm
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"entanglement_entropy_fock: norm defect {norm - 1.0:g}")
    rho1 = state.amps @ state.amps.conj().T
    lam = np.linalg.eigvalsh(rho1).real
    lam = lam[lam > 1e-300]
    return float(-np.sum(lam * np.log(lam)))


def entanglement_entropy_gaussian(state: GaussianState) -> float:
    """Entanglement entropy (nats) of a pure two-mode Gaussian state via the
    symplectic eigenvalue nu = sqrt(det) of the mode-1 covariance block."""
    purity_defect = abs(np.linalg.det(2.0 * state.cov) - 1.0)
    if purity_defect > 1e-6:
        raise ValueError(
            f"entanglement_entropy_gaussian: mixed global state "
            f"(det(2 cov) defect {purity_defect:g})"
        )
    nu = math.sqrt(max(np.linalg.det(state.cov[:2, :2]), 0.0))
    if nu <= 0.5:
        return 0.0
    return float(
        (nu + 0.5) * math.log(nu + 0.5) - (nu - 0.5) * math.log(nu - 0.5)
    )


def postselect_mode2(state: FockTwoMode, outcome: int):
    """Condition mode 1 on a photon-number measurement of mode 2.

    Returns (conditional amplitude vector over n1, probability).  A
    zero-probability outcome is an error, not a zero state.
    """
    if outcome < 0 or outcome > state.cutoff:
        raise ValueError("postselect_mode2: outcome beyond cutoff")
    col = state.amps[:, outcome]
    prob = float(np.sum(np.abs(col) ** 2))
    if prob < 1e-14:
        raise ValueError(f"postselect_mode2: outcome {outcome} has probability ~0")
    return col / math.sqrt(prob), prob


# ---------------------------------------------------------------------------
# Fock-truncation constructors (cross-backend oracles and classicality checks)
# ---------------------------------------------------------------------------


def coherent_fock_amps(alpha: complex, cutoff: int) -> np.ndarray:
    """Photon-number amplitudes of |alpha> up to the cutoff."""
    ns = np.arange(cutoff + 1)
    lg = np.array([math.lgamma(n + 1) for n in ns])
    amps = np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * lg) * np.power(
        complex(alpha), ns
    )
    return amps


def squeezed_fock_amps(r: float, phi: float, cutoff: int) -> np.ndarray:
    """Photon-number amplitudes of squeezed vacuum with zeta = r e^{i phi}."""
    if r < 0:
        raise ValueError("squeezed_fock_amps: r must be >= 0")
    amps = np.zeros(cutoff + 1, dtype=complex)
    t = math.tanh(r)
    pref = 1.0 / math.sqrt(math.cosh(r))
    for n in range(0, cutoff + 1, 2):
        m = n // 2
        lg = math.lgamma(n + 1) - 2.0 * math.lgamma(m + 1) - m * math.log(4.0)
        amps[n] = pref * (-np.exp(1j * phi) * t) ** m * math.exp(0.5 * lg)
    return amps


def two_mode_product(a1: np.ndarray, a2: np.ndarray, cutoff: int) -> FockTwoMode:
    """Product state from two single-mode amplitude vectors."""
    d = cutoff + 1
    v1 = np.zeros(d, dtype=complex)
    v2 = np.zeros(d, dtype=complex)
    v1[: min(d, len(a1))] = a1[:d]
    v2[: min(d, len(a2))] = a2[:d]
    return FockTwoMode(amps=np.outer(v1, v2), cutoff=cutoff)
