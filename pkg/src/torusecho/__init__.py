"""Irreversibility measures of quantized chaotic torus maps under decoherence.

The package simulates kicked cat maps on an N-dimensional torus Hilbert
space, applies one of three phase-space decoherence channels per step
(Gaussian diffusion, depolarising, Lorentzian), and extracts exponential
decay rates of echo and purity time series, including their dependence on
the perturbation strength and the coupling strength.
"""

__version__ = "0.1.0"

from .analysis import (
    SWEEP_COLUMNS,
    CellOutcome,
    DecayFit,
    PlateauReport,
    SweepResult,
    SweepRow,
    UnfittableSeriesError,
    build_grid,
    cell_key,
    detect_plateau,
    fit_decay_curve,
    fit_decay_rate,
    run_sweep,
    sum_law_residual,
)
from .channels import (
    MODELS,
    DecoherenceKernel,
    apply_channel_fast,
    apply_channel_kraus,
    channel_eigenvalues,
    kernel_dc,
    kernel_from_weights,
    kernel_gdm,
    kernel_ldm,
    make_kernel,
)
from .echo import (
    EchoConfig,
    EchoSeries,
    boltzmann_echo_series,
    config_kernel,
    evolve_step,
    loschmidt_echo_series,
    marginal_configs,
    purity_series,
    series_for,
)
from .hilbert import (
    RNG_KIND,
    ChordCoefficients,
    DensityMatrix,
    PureState,
    TorusSpace,
    chord_transform,
    coherent_state,
    fourier_transform,
    inverse_chord_transform,
    maximally_mixed,
    overlap,
    projector,
    pure_state,
    purity,
    random_coherent_centers,
    translation_operator,
)
from .maps import (
    ClassicalMapParams,
    KickedMap,
    LyapunovEstimate,
    apply_map,
    apply_map_inverse,
    classical_lyapunov_numeric,
    classical_step,
    classical_tangent,
    lyapunov_formula,
    perturbed_cat_quantum,
)
