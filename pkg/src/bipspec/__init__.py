"""Spectral characterizations of bipartite and distance-regular graphs.

The package computes spectra, principal idempotents, predistance and Hoffman
polynomials of small graphs, evaluates the spectral tests for regularity,
biregularity and distance-regularity, and checks every verdict against a
purely combinatorial oracle.
"""

from .characterize import CHECK_IDS, ClassificationReport, CheckResult, classify
from .config import Tolerances, default_tolerances
from .graph_core import Graph, catalog, parse_edge_list, parse_graph6, to_graph6
from .oracle import cross_validate, intersection_numbers

__version__ = "0.1.0"

__all__ = [
    "CHECK_IDS",
    "CheckResult",
    "ClassificationReport",
    "Graph",
    "Tolerances",
    "catalog",
    "classify",
    "cross_validate",
    "default_tolerances",
    "intersection_numbers",
    "parse_edge_list",
    "parse_graph6",
    "to_graph6",
]
