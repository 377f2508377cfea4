"""Distinguishable consensus digraphs and detectable link failures."""

from .digraph import Digraph, Edge, from_edge_list, laplacian, remove_edges
from .distinguish import is_distinguishable
from .detect import detect_report, exact_detectable, greedy_observation_set
from .graphio import load_graph

__all__ = [
    "Digraph",
    "Edge",
    "detect_report",
    "exact_detectable",
    "from_edge_list",
    "greedy_observation_set",
    "is_distinguishable",
    "laplacian",
    "load_graph",
    "remove_edges",
]

__version__ = "0.1.0"
