import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx
from hfree.graph import (Graph, GraphError, bfs_distances, bridges, canonical_form, components,
                         from_edges, has_isolated_vertex, is_connected, parse_graph6, write_graph6)
from hfree.families import make_cycle, make_path, make_s_minus, make_star


def test_basic_queries():
    g = from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.m == 3
    assert g.degrees() == [1, 2, 2, 1]
    assert g.has_edge(2, 1) and not g.has_edge(0, 3)
    assert sorted(g.neighbors(1)) == [0, 2]
    a = g.adjacency_matrix()
    assert np.array_equal(a, a.T) and a.sum() == 6


def test_edits_are_pure():
    g = make_path(3)
    h = g.add_edge(0, 2)
    assert g.m == 2 and h.m == 3
    assert h.remove_edge(0, 2) == g
    grown = g.add_edge(2, 3)
    assert grown.n == 4 and grown.has_edge(2, 3)


@pytest.mark.parametrize("bad", [
    lambda: from_edges(2, [(0, 0)]),
    lambda: from_edges(2, [(0, 2)]),
    lambda: make_path(3).remove_edge(0, 2),
    lambda: make_path(3).add_edge(0, 1),
    lambda: Graph(2, [0b10, 0b00]),
])
def test_invalid_graphs(bad):
    with pytest.raises(GraphError):
        bad()


def test_connectivity_and_bridges():
    g = from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert not is_connected(g)
    assert has_isolated_vertex(g)
    assert len(components(g)) == 2
    assert bridges(g) == {(2, 3)}
    assert bfs_distances(g, 0)[3] == 2
    assert bridges(make_cycle(6)) == set()
    assert len(bridges(make_path(6))) == 5


@pytest.mark.parametrize("n", [1, 2, 5, 30, 62, 63, 64, 100, 128])
def test_graph6_matches_networkx(n):
    rng = random.Random(n)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    g = from_edges(n, edges)
    ref = nx.to_graph6_bytes(to_nx(g), header=False).strip().decode()
    assert write_graph6(g) == ref
    assert parse_graph6(ref) == g


@pytest.mark.parametrize("text", ["", "A", "B~~", "C\x7f", "A_?"])
def test_graph6_rejects_malformed(text):
    with pytest.raises(GraphError):
        parse_graph6(text)


def test_canonical_form_counts_four_vertex_classes():
    # 6 connected graphs on 4 vertices
    pairs = list(itertools.combinations(range(4), 2))
    forms = set()
    for k in range(3, 7):
        for es in itertools.combinations(pairs, k):
            g = from_edges(4, es)
            if is_connected(g):
                forms.add(canonical_form(g))
    assert len(forms) == 6


def test_canonical_form_separates_cospectral_pair():
    # K_{1,4} and C4 + K1 share a spectrum but are not isomorphic
    a = make_star(4)
    b = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert canonical_form(a) != canonical_form(b)


def test_canonical_form_regular_graphs():
    pet = from_edges(10, nx.petersen_graph().edges())
    shuffled = nx.relabel_nodes(nx.petersen_graph(), dict(zip(range(10), random.Random(3).sample(range(10), 10))))
    assert canonical_form(pet) == canonical_form(from_edges(10, shuffled.edges()))
    prism = from_edges(6, nx.circular_ladder_graph(3).edges())
    k33 = from_edges(6, nx.complete_bipartite_graph(3, 3).edges())
    assert canonical_form(prism) != canonical_form(k33)


@st.composite
def graphs_and_perms(draw):
    n = draw(st.integers(1, 11))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    perm = draw(st.permutations(range(n)))
    return from_edges(n, chosen), list(perm)


@settings(max_examples=300, deadline=None)
@given(graphs_and_perms())
def test_canonical_form_relabel_invariant(case):
    g, perm = case
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=150, deadline=None)
@given(graphs_and_perms(), graphs_and_perms())
def test_canonical_form_agrees_with_isomorphism(a, b):
    g, h = a[0], b[0]
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_large_order_roundtrip():
    g = make_s_minus(60)
    assert parse_graph6(write_graph6(g)) == g
    assert canonical_form(g) == canonical_form(g.relabel(list(reversed(range(g.n)))))


def test_pickle_roundtrip():
    import pickle

    g = make_s_minus(9)
    assert pickle.loads(pickle.dumps(g)) == g
