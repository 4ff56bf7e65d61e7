"""kplexer: exact maximum k-plex solving on sparse graphs.

The solver anchors the search on a degeneracy (or community-degeneracy)
ordering and decides each anchored subproblem through its complement as a
bounded-degree-deletion question, so the practical cost tracks the gap
between the degeneracy bound and the optimum rather than the graph size.
"""

from .graph import (
    Graph,
    Subproblem,
    complement,
    edge_common_neighbors,
    edge_two_hop,
    gnp,
    induced_subgraph,
    parse_graph,
    two_hop_neighbors,
)
from .ordering import (
    EdgeOrdering,
    VertexOrdering,
    community_degeneracy_ordering,
    degeneracy_ordering,
    forward_edge_sets,
    forward_neighbors,
    forward_two_hop,
    greedy_lower_bound,
)
from .dbdd import DbddInstance, SearchStats, dbdd_solve, maybe_prune
from .reduction import higher_order_check, partition_bound, reduce_subproblem
from .solver import (
    SolverConfig,
    SolveResult,
    choose_anchor_hybrid,
    enumerate_anchor_subsets,
    kplex_com_decide,
    kplex_decide,
    maple_solve,
)
from .oracle import OracleLimit, brute_force_max_kplex, brute_force_min_dbdd, is_kplex

__version__ = "0.1.0"

__all__ = [
    "Graph", "Subproblem", "parse_graph", "induced_subgraph", "complement",
    "two_hop_neighbors", "edge_common_neighbors", "edge_two_hop", "gnp",
    "VertexOrdering", "EdgeOrdering", "degeneracy_ordering",
    "community_degeneracy_ordering", "forward_neighbors", "forward_two_hop",
    "forward_edge_sets", "greedy_lower_bound",
    "DbddInstance", "SearchStats", "dbdd_solve", "maybe_prune",
    "reduce_subproblem", "higher_order_check", "partition_bound",
    "SolverConfig", "SolveResult", "maple_solve", "kplex_decide",
    "kplex_com_decide", "choose_anchor_hybrid", "enumerate_anchor_subsets",
    "OracleLimit", "is_kplex", "brute_force_max_kplex", "brute_force_min_dbdd",
]
