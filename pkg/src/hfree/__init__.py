"""Spectral extremal graphs under forbidden subgraphs.

Graph construction, Perron computations, subgraph detection, isomorph-free
enumeration by edge count, local search, and a proof-step audit for the
H(4,3)-free even-size extremal graph.
"""
from .graph import Graph, GraphError, canonical_form, from_edges, parse_graph6, write_graph6
from .families import (make_f_prime, make_fan, make_friendship, make_h, make_s, make_s_minus,
                       parse_family_spec)
from .spectral import char_poly, lemma22_bound, odd_bound, rho_prime, spectral_radius
from .subgraph import contains_subgraph, is_h43_free, named_pattern
from .enumeration import EnumerationTask, enumerate_connected, extremal_search
from .search import SearchConfig, hill_climb
from .audit import audit

__version__ = "0.1.0"
