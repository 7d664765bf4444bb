"""OCS reconfiguration solvers: bipartition + min-cost flow, greedy baseline, exact oracle."""

from ._core import (
    BudgetExceeded,
    Error,
    InfeasibleDecomposition,
    InfeasibleFlow,
    InfeasibleInstance,
    Instance,
    InvalidInstance,
    NotProportional,
    ParseError,
    PiecewiseLinearCost,
    SolveResult,
    UnbalancedSpec,
    ZeroRowError,
    bipartition,
    detect_proportional,
    expand_to_arcs,
    gen_instance,
    greedy_solve,
    is_feasible,
    logical_of,
    oracle_min_rewires,
    piecewise_rewire_cost,
    rewire_count,
    solve,
    solve_min_cost_flow,
    validate_physical,
)

__version__ = "0.1.0"
