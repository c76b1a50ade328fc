"""Faulty-edge detection in resistive electrical networks.

Exact effective-resistance computation under single-edge faults,
closed-form change tables for complete and complete k-partite graphs,
measurement strategies with proven sizes, bound formulas, and an exact
minimum-measurement solver.
"""

from .bounds import (
    BoundReport,
    best_bound,
    bipartite_bound,
    complete_bound,
    kpartite_bound,
    table4_triple_count,
    tripartite_bound,
    val,
)
from .closed_forms import (
    CompleteCase,
    KPartiteCase,
    KPartiteColumn,
    c_coefficient,
    classify_complete,
    classify_kpartite,
    complete_delta,
    kpartite_delta,
    kpartite_inverse_entry,
)
from .families import (
    KPartiteShape,
    complete_network,
    complete_orbit_representatives,
    kpartite_network,
    measurement_orbit_representatives,
)
from .network import (
    INFINITE,
    Edge,
    FaultMode,
    InfiniteResistance,
    Measurement,
    Network,
    Resistance,
    build_reduced_laplacian,
    direct_effective_resistance_oracle,
    effective_resistance,
    perturbed_effective_resistance,
    reduced_inverse_entry,
)
from .signatures import (
    EquivalenceClasses,
    SignatureMatrix,
    UndetectableFaultError,
    build_signature,
    equivalence_classes,
    extend_for_no_fault,
    is_distinguishing,
    undistinguished_pairs,
)
from .solver import (
    ExactSolution,
    Infeasible,
    MeasurementGraphReport,
    TimedOut,
    analyze_measurement_graph,
    solve_exact,
    solve_greedy,
)
from .strategies import (
    MeasurementPlan,
    bipartite_strategy,
    complete_strategy,
    kpartite_strategy,
    plan_size_by_rule,
    tripartite_strategy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
