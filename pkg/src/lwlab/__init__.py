"""Numerical laboratory for the Lax-Wendroff scheme around a stationary shock.

The library covers discrete shock profiles, determinant-based spectral
stability, exact and asymptotic Green's functions with empirical envelope
verification, semigroup decay measurements and nonlinear orbital-stability
runs.  The ``lwlab`` command-line tool exposes the experiments.
"""

from .errors import LwLabError
from .model import (
    Flux,
    GridFunction,
    ShockConfig,
    SpectralParams,
    burgers_flux,
    dirac,
    excess_mass,
    make_shock_config,
    weighted_norm,
)
from .scheme import (
    apply_id_minus_shift,
    apply_linear,
    step_nonlinear,
    step_shock,
)
from .profiles import Profile, profile_with_mass, shoot_profile
from .spectral import (
    KappaPair,
    SpectralScan,
    alpha_m_for_delta_prime_zero,
    alpha_m_for_delta_zero,
    convexity_certificate,
    count_zeros,
    kappa_roots,
    kernel_eigenvector,
    lopatinskii,
    lopatinskii_derivative_at_one,
    spectral_curve_membership,
)
from .greens import (
    GreenField,
    contour_reconstruction,
    derivative_green,
    envelope_K,
    envelope_M,
    reduced_green,
    spatial_green,
    spatial_green_free,
    temporal_green,
    verify_derivative_bounds,
    verify_green_bounds,
)
from .asymptotics import (
    BoundReport,
    KernelCoeffs,
    QuadratureSpec,
    activation,
    activation_table,
    activation_via_primitive,
    check_thmA3,
    check_thmA4,
    corrector_G,
    free_green_asymptotic,
    oscillatory_profile,
)
from .experiments import (
    DecayReport,
    StabilityReport,
    default_perturbation,
    heavy_tail_perturbation,
    measure_semigroup_decay,
    reproduce_profile_family,
    run_orbital_stability,
    snapshot_run,
    write_csv,
    write_json,
)

__version__ = "0.1.0"
