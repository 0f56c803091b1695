"""Far-field asymptotics of the steady wake behind a small body near a moving wall.

Closed-form asymptotic fields, their Fourier-side counterparts, the spectral
kernels and time components they come from, and a harness that checks the
decay estimates behind them numerically.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .analysis_core import (
    CompositeWeight,
    SpaceIndex,
    WeightSpec,
    dawson,
    empirical_space_norm,
    erfcx,
    kappa,
    lambda_minus,
    mu,
    mu_bar,
    mu_tilde,
    space_weight,
    sqrt_minus_ik,
    weighted_ratio,
)
from .asym_fields import (
    ASYMPTOTE_NAMES,
    AsymptoticCoefficients,
    asymptote_field,
    direct_counterpart,
    eta_b,
    eta_w,
    fourier_asymptote,
    omega_as,
    omega_b,
    omega_w,
    phi1,
    phi21,
    phi22,
    psi1,
    psi21,
    psi22,
    u_as,
    v_as,
)
from .oseen_kernels import (
    COMPONENT_IDS,
    KERNEL_IDS,
    SourceTerm,
    assemble_Q,
    component,
    extract_constants,
    kernel,
)
from .quadrature import NonConvergenceError, QuadratureBudget
from .transform import SpectralField, convolve, forward_fourier, inverse_fourier
from .verify import (
    SUITES,
    Grid,
    PropositionCheck,
    RatioReport,
    RemainderCase,
    check_convolution,
    check_field_identities,
    check_inequality,
    check_remainder,
    check_semigroup,
    correspondence_table,
    remainder_cases,
    run_suite,
    synthetic_source,
)
