"""Phase-space calculus, deformation products, and continuous-spectrum decoherence."""

from .phase_space import (
    Grid,
    PhaseFunction,
    PhasePoint,
    SymplecticForm,
    integrate,
    interior_max_abs,
    partial_derivative,
    poisson_bracket,
)
from .moyal import StarOrder, classical_limit_check, moyal_bracket, star_product
from .weyl import (
    OperatorKernel,
    WaveFunction,
    gaussian_state,
    oscillator_state,
    p_marginal,
    q_marginal,
    trace_pair,
    weyl_quantize,
    wigner_of_kernel,
    wigner_of_pure_state,
)
from .spectral import (
    MomentumMap,
    Observable,
    SpectralGrid,
    adjoint,
    commutator_with_H_vanishes,
    make_observable,
    symb_singular,
)
from .states import (
    AdmissibilityError,
    ClassicalDensity,
    State,
    make_state,
    pair,
    pair_regular_symbols,
    pair_singular_symbols,
    pure_state,
    singular_symbol,
    to_classical_density,
)
from .decoherence import (
    DecayReport,
    Trajectory,
    evolve_pairing,
    fit_decay,
    limit_pairing,
    residual_trajectory,
    verify_final_positivity,
)

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "PhaseFunction",
    "PhasePoint",
    "SymplecticForm",
    "integrate",
    "interior_max_abs",
    "partial_derivative",
    "poisson_bracket",
    "StarOrder",
    "classical_limit_check",
    "moyal_bracket",
    "star_product",
    "OperatorKernel",
    "WaveFunction",
    "gaussian_state",
    "oscillator_state",
    "p_marginal",
    "q_marginal",
    "trace_pair",
    "weyl_quantize",
    "wigner_of_kernel",
    "wigner_of_pure_state",
    "MomentumMap",
    "Observable",
    "SpectralGrid",
    "adjoint",
    "commutator_with_H_vanishes",
    "make_observable",
    "symb_singular",
    "AdmissibilityError",
    "ClassicalDensity",
    "State",
    "make_state",
    "pair",
    "pair_regular_symbols",
    "pair_singular_symbols",
    "pure_state",
    "singular_symbol",
    "to_classical_density",
    "DecayReport",
    "Trajectory",
    "evolve_pairing",
    "fit_decay",
    "limit_pairing",
    "residual_trajectory",
    "verify_final_positivity",
]
