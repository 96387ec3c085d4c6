"""Figure rendering for the CLI report path.

Renders the hysteresis loop (and optional entropy trace) for a single run,
and the area-versus-frequency curve for a sweep.  Uses the non-interactive
Agg backend; files are written next to the delimited output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .hysteresis import LoopReport, extract_loop
from .memristor import Trajectory

__all__ = ["render_loop_figure", "render_sweep_figure"]

_XLABELS = {
    "coherent_x": r"$\langle x_{in} \rangle$",
    "squeezed_var": r"$\langle x^2_{vac} \rangle - \langle x^2_{in} \rangle$",
    "fock_angle": r"$\langle x_{in} \rangle$",
}


def render_loop_figure(traj: Trajectory, report: LoopReport, path: str) -> None:
    """One-period input-output loop, plus the entropy trace if attached."""
    curve = extract_loop(traj)
    n_axes = 2 if traj.entropy is not None else 1
    fig, axes = plt.subplots(1, n_axes, figsize=(5.0 * n_axes, 4.0))
    ax = axes[0] if n_axes == 2 else axes
    ax.plot(curve.points[:, 0], curve.points[:, 1], lw=1.2)
    ax.axhline(0.0, color="0.8", lw=0.6)
    ax.axvline(0.0, color="0.8", lw=0.6)
    ax.set_xlabel(_XLABELS[traj.drive.kind])
    ax.set_ylabel(r"$\langle n_{out} \rangle_{b_1}$")
    ax.set_title(
        f"{traj.drive.kind}  $\\omega$={traj.drive.omega:g}  "
        f"area={report.area_geometric:.4g}  "
        f"{'pinched' if report.pinched else 'non-pinched'}"
    )
    if n_axes == 2:
        ax2 = axes[1]
        ax2.plot(traj.t, traj.entropy, lw=1.0, color="tab:red")
        ax2.set_xlabel("t")
        ax2.set_ylabel("entanglement entropy (nats)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sweep_figure(omegas, areas, scenario: str, path: str) -> None:
    """Unsigned loop area against drive frequency."""
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.plot(omegas, areas, "o-", lw=1.2)
    ax.set_xlabel(r"$\omega$")
    ax.set_ylabel("loop area")
    ax.set_title(f"{scenario}: area vs frequency")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
