"""Slice-in-slice scheduling toolkit.

Capacity and load-variance bounds, dependency-graph coloring, chromatic
polynomial counting and probabilistic per-service resource estimation, each
with a brute-force or Monte Carlo oracle for checking.
"""

from .allocation import (
    AllocationModelParams,
    ObjectiveEval,
    ResourceEstimate,
    ServiceState,
    conditional_prob,
    estimate_resource,
    lambda_weighted,
    poisson_pmf,
    rayleigh_term,
    throughput,
    total_probability,
)
from .capacity_model import (
    BoundParams,
    CategoryCapacity,
    VarianceBreakdown,
    limit_conditions,
    service_cap,
    slice_capacity_sum,
    sla_lower_bound,
    variance_bound,
)
from .graph_core import (
    Coloring,
    DependencyGraph,
    LayeredPartite,
    build_dependency_graph,
    chromatic_number_brute,
    chromatic_poly_complete,
    chromatic_poly_layered_partite,
    count_proper_colorings,
    degree_ordering,
    earlier_neighbors,
    greedy_color,
    is_maximal_clique,
    is_perfect_brute,
    max_clique_size_brute,
)
from .simulator import (
    Arrival,
    ArrivalRecord,
    ScenarioConfig,
    SimulationReport,
    admit,
    run_scenario,
)
from .stochastic import (
    FactorModel,
    McEstimate,
    mc_sla_probability,
    mc_variance_of_load,
    sample_allocations,
)

__version__ = "0.1.0"
