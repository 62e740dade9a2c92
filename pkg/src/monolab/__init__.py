"""monolab: entanglement measures and parameterized sharing bounds for small
multi-qubit states, with a randomized verification harness and a CLI."""

from .errors import MonolabError
from .qstate import (
    DensityMatrix,
    EXAMPLE_PARAMS,
    GenSchmidtParams,
    PureState,
    density_from_pure,
    gen_schmidt_state,
    ghz,
    haar_random_mixed,
    haar_random_pure,
    partial_trace,
    partial_transpose,
    w_state,
)
from .measures import (
    MEASURE_PROFILES,
    MeasureProfile,
    concurrence_assist_2q,
    concurrence_mixed_2q,
    concurrence_pure,
    cren,
    cren_2q,
    crenoa,
    crenoa_2q,
    gs_closed_forms,
    negativity,
    negativity_pure,
    tripartite_triple,
    wootters_spectrum,
)
from .inequalities import (
    BoundSpec,
    ChainSpec,
    InequalityReport,
    admissible_monogamy,
    admissible_polygamy,
    bound_factor,
    chain_monogamy,
    chain_polygamy,
    check_monogamy_tripartite,
    check_polygamy_tripartite,
    compare_bounds,
    f_lemma1,
    figure_csv,
    figure_grid,
)
from .verify import SweepConfig, SweepSummary, run_sweep

__version__ = "0.1.0"

__all__ = [
    "MonolabError",
    "DensityMatrix", "PureState", "GenSchmidtParams", "EXAMPLE_PARAMS",
    "density_from_pure", "gen_schmidt_state", "ghz", "w_state",
    "haar_random_pure", "haar_random_mixed",
    "partial_trace", "partial_transpose",
    "MeasureProfile", "MEASURE_PROFILES",
    "concurrence_pure", "concurrence_mixed_2q", "concurrence_assist_2q",
    "negativity", "negativity_pure",
    "cren", "cren_2q", "crenoa", "crenoa_2q",
    "wootters_spectrum", "gs_closed_forms", "tripartite_triple",
    "BoundSpec", "ChainSpec", "InequalityReport",
    "f_lemma1", "bound_factor",
    "admissible_monogamy", "admissible_polygamy",
    "check_monogamy_tripartite", "check_polygamy_tripartite",
    "chain_monogamy", "chain_polygamy",
    "compare_bounds", "figure_grid", "figure_csv",
    "SweepConfig", "SweepSummary", "run_sweep",
]
