"""warmflow: max-flow solving with warm starts from predicted flows."""

from .augment import (
    AugPath,
    SolveReport,
    Subroutine,
    bfs_path,
    dinic_phase,
    max_flow,
    min_cut,
    send_flow,
)
from .core import (
    EnumerationBudgetExceeded,
    FeasibilityReport,
    Flow,
    FlowNetwork,
    Imbalance,
    PathStats,
    ResidualView,
    check_feasible,
    enumerate_max_flows,
    flow_value,
    imbalance,
    l1_distance,
    prediction_error,
    residual,
    zero_flow,
)
from .learn import (
    InstanceDistribution,
    SampleSet,
    canonical_optimum,
    empirical_risk,
    median_erm,
    sample_instances,
)
from .warmstart import (
    ProjectionInvariantError,
    ProjectionRound,
    WarmStartReport,
    build_projection_aux,
    clamp_to_capacity,
    feasibility_projection,
    warm_start_solve,
)

__version__ = "0.1.0"

__all__ = [
    "AugPath",
    "EnumerationBudgetExceeded",
    "FeasibilityReport",
    "Flow",
    "FlowNetwork",
    "Imbalance",
    "InstanceDistribution",
    "PathStats",
    "ProjectionInvariantError",
    "ProjectionRound",
    "ResidualView",
    "SampleSet",
    "SolveReport",
    "Subroutine",
    "WarmStartReport",
    "bfs_path",
    "build_projection_aux",
    "canonical_optimum",
    "check_feasible",
    "clamp_to_capacity",
    "dinic_phase",
    "empirical_risk",
    "enumerate_max_flows",
    "feasibility_projection",
    "flow_value",
    "imbalance",
    "l1_distance",
    "max_flow",
    "median_erm",
    "min_cut",
    "prediction_error",
    "residual",
    "sample_instances",
    "send_flow",
    "warm_start_solve",
    "zero_flow",
]
