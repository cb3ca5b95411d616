"""Extended Bloch representation of quantum states and measurements."""
from .su_basis import GeneratorBasis, build_gell_mann, build_tensor_basis, verify_basis
from .state_space import StateKind, classify, from_bloch, purity, random_mixed, random_pure, to_bloch
from .observables import (
    MeasurementSimplex,
    OutcomeGrouping,
    SpectralDecomposition,
    group_degenerate,
    measurement_simplex,
    simplex_of,
    spectral_decompose,
)
from .hidden_measurement import (
    born_probabilities,
    monte_carlo_report,
    project_onto_simplex,
    region_of,
    run_degenerate,
    run_measurement,
    sample_lambda,
)
from .composite import build_entangled, decompose_direct_sum, is_product, partial_trace
from .bell_rod import RodConfig, chsh, correlation, joint_distribution, order_invariance_check, run_rod_trial
from .rng import stream

__version__ = "0.1.0"
