"""Sorting when some pairs of items may never be compared.

A comparison graph says which pairs may be compared; a probe oracle answers
allowed comparisons against a hidden total order.  The sorters recover the
largest partial order the allowed comparisons can reveal while counting
probes.
"""

from fsort.cliques import CliqueCover, build_clique_cover, greedy_clique, split_R_S
from fsort.detsort import NodeTrace, approx_median, peel_sort, sort_deterministic
from fsort.graph import (
    ComparisonGraph,
    GraphFormatError,
    from_forbidden_list,
    gen_complete_bipartite,
    gen_gnp,
    gen_random_forbidden,
)
from fsort.oracle import Answer, ForbiddenProbeError, HiddenOrder, ProbeOracle
from fsort.poset import ContradictionError, PartialOrder, transitive_closure
from fsort.randsort import (
    RandParams,
    check_Q1,
    choose_params,
    critical_probability,
    sort_random_graph,
    sort_randomized,
)
from fsort.reference import RunReport, bound_value, exhaustive_check, ground_truth, verify_run

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "CliqueCover",
    "ComparisonGraph",
    "ContradictionError",
    "ForbiddenProbeError",
    "GraphFormatError",
    "HiddenOrder",
    "NodeTrace",
    "PartialOrder",
    "ProbeOracle",
    "RandParams",
    "RunReport",
    "approx_median",
    "bound_value",
    "build_clique_cover",
    "check_Q1",
    "choose_params",
    "critical_probability",
    "exhaustive_check",
    "from_forbidden_list",
    "gen_complete_bipartite",
    "gen_gnp",
    "gen_random_forbidden",
    "greedy_clique",
    "ground_truth",
    "peel_sort",
    "sort_deterministic",
    "sort_random_graph",
    "sort_randomized",
    "split_R_S",
    "transitive_closure",
    "verify_run",
]
