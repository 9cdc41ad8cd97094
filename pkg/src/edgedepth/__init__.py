"""Exact depth computations for powers of edge-weighted graph ideals."""
from .closure import integral_closure, is_integrally_closed_ideal, newton_membership
from .depth import (DepthReport, SizeLimitExceeded, betti_table, depth, depth_both,
                    depth_quotient, lcm_lattice)
from .graphs import (WeightedGraph, build_cycle, build_path, cycle_family, edge_ideal,
                     graph_from_json, is_integrally_closed_graph)
from .monomials import Monomial, MonomialIdeal, colon_ideal, colon_monomial, power

__all__ = [
    "DepthReport", "Monomial", "MonomialIdeal", "SizeLimitExceeded", "WeightedGraph",
    "betti_table", "build_cycle", "build_path", "colon_ideal", "colon_monomial",
    "cycle_family", "depth", "depth_both", "depth_quotient", "edge_ideal",
    "graph_from_json", "integral_closure", "is_integrally_closed_graph",
    "is_integrally_closed_ideal", "lcm_lattice", "newton_membership", "power",
]
