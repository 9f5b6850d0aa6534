"""Equitable tree-colorings: construction, verification, exact search and charge audits."""

from .classes import girth, is_class_A, is_class_B, short_cycles
from .coloring import TreeColoring, equitable_size_bounds, lemma1_extend, verify
from .discharging import apply_rules, assign_initial, check_propositions, report_negative, total_charge
from .graph import Graph, PlaneEmbedding, build_graph, derive_faces, find_cycle, induces_forest
from .oracle import a_eq, a_star_eq, decide
from .reduction import build_S, extend_star, find_configuration, solve

__version__ = "0.1.0"

__all__ = [
    "Graph", "PlaneEmbedding", "TreeColoring",
    "build_graph", "derive_faces", "induces_forest", "find_cycle",
    "girth", "short_cycles", "is_class_A", "is_class_B",
    "equitable_size_bounds", "verify", "lemma1_extend",
    "decide", "a_eq", "a_star_eq",
    "find_configuration", "build_S", "extend_star", "solve",
    "assign_initial", "apply_rules", "total_charge", "check_propositions", "report_negative",
]
