"""Permutation groups, coset and Cayley graphs, and factorization checks."""

from .perm import Permutation, cycle_type, from_cycles, inv, mul, order
from .groups import PermGroup
from .chain import StabilizerChain
from .search import (SubgroupSearchBudget, BudgetExceeded, centralizer_in_group, core,
                     intersection, low_index_subgroups, normalizer,
                     subgroups_of_order_exhaustive)
from .atlas import builtin_group, load_witness, resolve_group
from .graphs import Graph, cayley_graph, coset_graph, quotient_graph, s_arc_transitivity
from .automorphisms import graph_automorphisms

__all__ = [
    "Permutation", "cycle_type", "from_cycles", "inv", "mul", "order", "PermGroup",
    "StabilizerChain", "SubgroupSearchBudget", "BudgetExceeded", "centralizer_in_group",
    "core", "intersection", "low_index_subgroups", "normalizer",
    "subgroups_of_order_exhaustive", "builtin_group", "load_witness", "resolve_group",
    "Graph", "cayley_graph", "coset_graph", "quotient_graph", "s_arc_transitivity",
    "graph_automorphisms",
]
