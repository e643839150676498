"""Correlation-matrix geometry of bipartite quantum states."""

from ._core import (
    BlochDecomposition,
    InputError,
    MomentPoint,
    NumericError,
    ObservableSpectrum,
    SchmidtVerdict,
    SimulationResult,
    correlation_spectrum,
    decompose,
    detect_schmidt,
    f_lb,
    f_ub,
    g_lb,
    gluing_counts,
    isotropic_state,
    kink_coverage,
    kink_positions,
    lower_boundary_k,
    moments,
    power_trace,
    purity_cap,
    run_simulation,
    schmidt_bound,
    spectrum_full,
    spectrum_rank4,
)

__all__ = [
    "BlochDecomposition",
    "InputError",
    "MomentPoint",
    "NumericError",
    "ObservableSpectrum",
    "SchmidtVerdict",
    "SimulationResult",
    "correlation_spectrum",
    "decompose",
    "detect_schmidt",
    "f_lb",
    "f_ub",
    "g_lb",
    "gluing_counts",
    "isotropic_state",
    "kink_coverage",
    "kink_positions",
    "lower_boundary_k",
    "moments",
    "power_trace",
    "purity_cap",
    "run_simulation",
    "schmidt_bound",
    "spectrum_full",
    "spectrum_rank4",
]
