"""Black-box function minimization over the Boolean hypercube.

A degree-bounded multilinear surrogate is maintained by multiplicative
weight updates over monomial experts; new query points come from simulated
annealing on the surrogate. The package also ships benchmark oracles,
random-search and direct-annealing baselines, theory audits, and an
experiment harness with a CLI (see `comex --help`).
"""

from .acquisition import (
    AnnealSchedule,
    BoltzmannPmf,
    exponential_acquisition_audit,
    exponential_pmf,
    pmf_kl,
    propose_query,
    simulated_annealing,
)
from .basis import MonomialBasis, basis_size, enumerate_basis, evaluate_features, evaluate_monomial
from .baselines import random_search, simulated_annealing_direct
from .domain import (
    SumConstrained,
    Unconstrained,
    apply_flips,
    contains,
    enumerate_points,
    from_bits,
    hamming_distance,
    neighbor_move,
    sample_neighbor,
    sample_uniform,
    to_bits,
)
from .harness import ExperimentConfig, build_problem, run_comex, run_experiment, run_single
from .results import (
    RunTrace,
    Summary,
    export_json,
    export_summary_csv,
    load_summary_csv,
    simple_regret,
    summarize,
)
from .surrogate import (
    ADAPTIVE_C,
    LearningRateSchedule,
    MonomialSurrogate,
    TrueCoefficients,
    UpdateDiagnostics,
    kl_divergence,
    kl_drop_audit,
)

__version__ = "0.1.0"
