"""Irreversible qubit dynamics in structured-gain photonic environments."""

from .correlations import SpectralPoint, field_spectrum, noise_current_spectrum
from .errors import (
    DegenerateKernelError,
    DomainError,
    LindgainError,
    NumericalInstabilityError,
    OracleError,
    OutOfValidityError,
    SingularityError,
    SpectralToleranceError,
    ValidationError,
)
from .greens import (
    InteractionTensorPair,
    SlabMotionParams,
    SubstrateGeometry,
    add_background_loss,
    bessel_k,
    greens_identity_check,
    isotropic_gain_tensors,
    moving_slab_quadrature_oracle,
    moving_slab_tensors_asymptotic,
    moving_slab_tensors_exact,
)
from .master import (
    DensityMatrix,
    LinearFamilyState,
    Liouvillian,
    QubitSpec,
    RateMatrices,
    RatePair,
    ThermalOccupation,
    Trajectory,
    TWO_LEVEL,
    V_SHAPED,
    evolve,
    fit_linear_family_theta,
    liouvillian_two_level,
    liouvillian_v,
    rate_matrices_v,
    rates_two_level,
    steady_linear_family,
    steady_state_kernel,
    steady_two_level_closed,
    steady_v_closed,
    thermal_rate_matrices,
    thermal_rate_pair,
    thermal_tensors,
)
from .material import (
    DrudeParams,
    ScalarPermittivitySplit,
    drude_permittivity,
    quasistatic_reflection,
    spectral_split,
    substrate_reflection_pair,
)

__version__ = "0.1.0"
