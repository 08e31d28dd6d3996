"""Collective-spin states for single-shot interferometric phase estimation.

Builds the standard family of test states (coherent, Yurke, NOON, optimal
phase-squeezed, and two-axis counter-twisted states), scores them with
spin- and phase-squeezing figures of merit and the canonical phase
distribution, finds the twisting times that optimize either figure, and
renders spherical Wigner functions on quadrature-exact grids.
"""

from .algebra import (
    SpinOperator,
    SpinQuantum,
    SpinState,
    angular_momentum_operator,
    basis_matrix,
    eigenbasis,
    ladder_about_x,
    rotate_about_z,
    unitary_exp,
)
from .errors import (
    DivergentAtQuadrature,
    GridMismatch,
    GridTooCoarse,
    InsufficientData,
    MagnitudeOverflow,
    MeanSpinZero,
    NoInteriorMinimum,
    NonHermitianGenerator,
    OddParticleNumber,
    SpinPhaseError,
)
from .metrics import (
    PhaseDistribution,
    Sharpness,
    SqueezingReport,
    WrappedVariance,
    basis_coefficients,
    mean_spin,
    phase_distribution,
    ramsey_precision,
    sharpness,
    squeezing_report,
    variance_wrapped,
    xi_squared,
    xi_squared_min,
    zeta_squared,
    zeta_squared_rc,
)
from .states import (
    DEFAULT_YURKE_ALPHA,
    StateKind,
    TwoAxisEvolver,
    coherent_state,
    evolve_2act,
    load_state,
    make_state,
    noon_state,
    optimal_phase_state,
    save_state,
    yurke_state,
)
from .twist import (
    ScalingFit,
    TwistCurve,
    TwistOptimum,
    minimize,
    scaling_fit,
    sweep,
)
from .wigner import (
    CgKey,
    WignerGrid,
    clebsch_gordan,
    equal_area_values,
    kernel_delta,
    marginal_phi,
    overlap,
    phase_state,
    spherical_harmonic,
    wigner_function,
)

__version__ = "0.1.0"
