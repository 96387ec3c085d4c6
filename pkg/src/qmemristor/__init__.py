"""Photonic quantum memristor simulator.

A feedback-controlled tunable beam splitter acting on coherent, squeezed,
and single-photon (Fock) inputs, with hysteresis-loop analysis: unsigned
areas by two independent methods, closed-form and asymptotic comparisons,
pinch detection, crossing counts, and entanglement entropy of the outputs.
"""

from .hysteresis import (
    LoopReport,
    area_integral_method,
    coherent_area_analytic,
    crossing_prediction,
    extract_loop,
    fock_area_asymptotic,
    fock_area_refined,
    is_pinched,
    loop_report,
    squeezed_area_asymptotic,
)
from .memristor import (
    DriveSignal,
    FeedbackLaw,
    Trajectory,
    attach_entropy,
    closed_form_theta,
    run_scenario,
)
from .numerics import (
    PlanarCurve,
    bessel_j2,
    decompose_loop,
    loop_area_unsigned,
    rk4_integrate,
)
from .optics_core import (
    BeamSplitterSpec,
    MZConfig,
    bs_matrix,
    is_unitary,
    mz_effective,
    retarder_matrix,
)
from .states import (
    CoherentPair,
    FockTwoMode,
    GaussianState,
    apply_bs_coherent,
    apply_bs_fock,
    apply_bs_gaussian,
    entanglement_entropy_fock,
    entanglement_entropy_gaussian,
    fock_observables,
    fock_qubit_input,
    gaussian_observables,
    postselect_mode2,
    squeezed_with_vacuum,
)

__version__ = "0.1.0"
