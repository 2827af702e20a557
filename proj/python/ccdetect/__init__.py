"""Volume-constrained modularity community detection."""

from ._core import (
    Graph,
    brute_force,
    compare,
    count_feasible_exact,
    count_feasible_closed_form,
    default_tau,
    detect,
    fold,
    generate,
    hamiltonian,
    is_infeasible,
    modularity,
    ordered_bell,
    stirling2,
)

__all__ = [
    "Graph",
    "brute_force",
    "compare",
    "count_feasible_exact",
    "count_feasible_closed_form",
    "default_tau",
    "detect",
    "fold",
    "generate",
    "hamiltonian",
    "is_infeasible",
    "modularity",
    "ordered_bell",
    "stirling2",
]
