import functools
import itertools

import networkx as nx
import pytest

from hfree.graph import from_edges


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return from_edges(h.number_of_nodes(), h.edges())


def brute_force_classes(m, patterns=(), connected=True):
    """Isomorphism classes with m edges by exhaustive edge subsets, deduplicated with networkx.

    Independent of the augmentation enumerator: it walks every labelled
    edge set on up to m + 1 vertices (2m without the connectivity filter).
    """
    return [h for h in _classes(m, connected) if not any(_nx_contains(h, p) for p in patterns)]


@functools.lru_cache(maxsize=None)
def _classes(m, connected):
    buckets = {}
    for n in range(2, (m + 2) if connected else (2 * m + 1)):
        pairs = list(itertools.combinations(range(n), 2))
        if len(pairs) < m:
            continue
        for es in itertools.combinations(pairs, m):
            h = nx.Graph(es)
            if h.number_of_nodes() != n:
                continue
            if connected and not nx.is_connected(h):
                continue
            key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
            reps = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(h, r) for r in reps):
                reps.append(h)
    return tuple(h for reps in buckets.values() for h in reps)


def _nx_contains(h, p):
    gm = nx.algorithms.isomorphism.GraphMatcher(h, p)
    return gm.subgraph_is_monomorphic()


@pytest.fixture
def nx_helpers():
    return to_nx, from_nx


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for res in sorted(test_acceptance.RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(res.line())
