"""Tunable N-photon interference states between laser light and downconverted light."""

from .analysis import (
    ClassicalPrediction,
    EtaSweepRecord,
    LinearizationError,
    Objective,
    Regime,
    classical_predictions,
    find_optimal_eta,
    noon_fidelity,
    parity_contrast,
    phase_error_linearized,
    qfi,
    regime_classify,
    sweep,
)
from .schwinger import (
    Axis,
    RotationSpec,
    SpinOperator,
    change_basis,
    expectation,
    j_operators,
    rotate,
    squeezing_relation_residual,
    variance,
)
from .sphere import SphereGrid, husimi_grid, render_heatmap, su2_coherent_overlap
from .states import (
    Basis,
    SourceParams,
    TwoModeState,
    approx_noon_state,
    build_eta_state,
    build_projection_state,
    eta_residual,
    fock_state,
    noon_state,
)

__version__ = "0.1.0"
