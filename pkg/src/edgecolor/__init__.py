"""Deterministic distributed edge coloring: pervasive matchings, (1+eps)Delta and 3Delta/2 colorings."""

from .coloring import (
    RunContext,
    color_3graph,
    color_degree_le2,
    degree_split,
    eps_edge_coloring,
    extract_3graph,
    full_coloring,
    greedy_coloring,
    reduce_degree_phase,
    three_halves_coloring,
    tight_palette_coloring,
)
from .errors import (
    BlowUpError,
    EdgeColorError,
    GraphParseError,
    GuaranteeError,
    OracleCapError,
    PreconditionError,
    UsageError,
)
from .graph import EdgeColoring, Graph, Matching, WeightedGraph, build_graph, parse_edge_list, validate
from .ledger import RoundLedger, price, report
from .matching import (
    approx_weighted_matching,
    bipartite_max_matching,
    brute_force_max_weight_matching,
    combine_matchings,
    greedy_maximal_matching,
    hit_matching,
    pervasive_matching,
)

__version__ = "0.1.0"
