"""Gouy phase, width, phase-space and Fisher-information toolkit for a
correlated Gaussian wavepacket in a static harmonic trap."""

from .core import (
    ComplexField,
    UnitSystem,
    WavepacketSpec,
    gamma_to_pearson,
    make_spec,
    pearson_to_gamma,
)
from .dynamics import (
    EvolvedParams,
    GouyTrace,
    WidthExtremum,
    aux_C,
    evolved_params,
    expand_high_frequency,
    expand_low_frequency,
    expand_weak_correlation,
    find_width_extrema,
    gouy_denominator,
    gouy_phase,
    gouy_principal,
    gouy_rate,
    gouy_unwrapped,
    inv_curvature,
    resonance_params,
    wavefunction,
    width,
)
from .errors import *  # noqa: F401,F403
from .estimation import (
    Coincidence,
    CrlbBounds,
    FisherReport,
    LikelihoodModel,
    cfi_closed_form,
    cfi_gouy_coincidence,
    cfi_numeric,
    crlb,
    discrete_cfi,
    fisher_report,
    gouy_sign_changes,
    qfi_closed_form,
    qfi_general,
    resonant_covariance_family,
)
from .oracle import (
    GaussianFit,
    QuadratureConfig,
    evolve_numeric,
    fit_gaussian_params,
    initial_state,
    kernel,
    relative_l2,
)
from .phase_space import (
    CovarianceState,
    SqueezeParams,
    evolved_covariance,
    free_covariance,
    gamma_from_squeeze,
    initial_covariance,
    purity,
    squeezed_covariance,
    wigner_from_wavefunction,
    wigner_gaussian,
)

__version__ = "0.1.0"
