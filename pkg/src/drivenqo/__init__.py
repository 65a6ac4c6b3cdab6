"""Driven qubit-oscillator simulator: analytic Van Vleck/polaron treatment of
quasienergy spectra and qubit dynamics in the ultrastrong-coupling, extreme-
driving regime, cross-validated against a brute-force Floquet oracle."""

from .errors import (
    ConfigError,
    DomainError,
    DrivenQOError,
    NumericalError,
    SmallDenominatorError,
    StepSizeError,
    TruncationError,
)
from .model import (
    ResonanceIndex,
    SystemParams,
    Truncation,
    commensurability_check,
    find_resonances,
    normalize_resonance_index,
    resonance_detuning,
)
from .specialfns import (
    DressingArgs,
    bessel_j,
    bessel_j_array,
    displacement_matrix,
    displacement_overlap,
    dressed_delta,
    laguerre,
    xi,
)
from .vanvleck import (
    BRANCH_MINUS,
    BRANCH_PLUS,
    BRANCH_UNCOUPLED_DOWN,
    SPIN_DOWN,
    SPIN_UP,
    EffectiveBlock,
    FloquetState,
    QuasienergyLevel,
    delta0_quasienergy,
    dressed_coupling,
    dressed_gap,
    effective_block,
    floquet_mode,
    quasienergies,
    second_order_shift,
    uncoupled_levels,
)
from .floquet_numeric import (
    EvolutionResult,
    SambeMatrix,
    build_sambe_matrix,
    evolve,
    match_mode,
    quasienergy_spectrum,
    sambe_eigensystem,
    survival_numeric,
)
from .dynamics import (
    PeakPrediction,
    Spectrum,
    TimeSeries,
    default_time_grid,
    fourier_spectrum,
    infer_manifold,
    predict_peaks,
    spectral_peaks,
    survival_analytic,
    thermal_weights,
)

__version__ = "0.1.0"
