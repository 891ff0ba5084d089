"""Numerical laboratory for the phase-modulated atom-optics kicked rotor.

Split-step propagation of momentum-ladder states over a pulse train whose
grating phase is sinusoidally modulated, plus the analytic harmonic treatment
of the modulation, the near-resonance classical map, fitting diagnostics, and
a sweep harness with CSV output.
"""

__version__ = "0.1.0"

from .model import (
    HBAR,
    KickParams,
    PhysicalParams,
    ScaledParams,
    effective_kick_strength,
    nearest_resonance,
    phase_sequence,
    scaled_params,
    talbot_time,
    unscaled_period,
)
from .spectral import (
    ModulationSpectrum,
    alias_histogram,
    aliased_ratio,
    modulation_spectrum,
    resonance_energy_profile,
    resonance_frequencies,
)
from .quantum import (
    GaussianEnsemble,
    GridAdequacyError,
    LadderState,
    MomentumDistribution,
    PlaneWave,
    Trajectory,
    apply_free,
    apply_kick,
    evolve,
    init_state,
    momentum_distribution,
)
from .pseudoclassical import (
    PhaseSpacePoint,
    default_seed_grid,
    iterate_orbit,
    map_step,
    poincare_section,
    to_pseudoclassical,
)
from .diagnostics import (
    FitResult,
    default_fit_window,
    diffusion_constant,
    energy,
    fit_power_law,
    localization_fit,
    zero_momentum_fraction,
)
from .config import ConfigError, ExperimentConfig, evaluate_expression
