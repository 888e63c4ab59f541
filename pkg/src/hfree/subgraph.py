"""Non-induced subgraph containment, the H(4,3) detector and the (P2 u P3)-free catalog."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .families import make_fan, make_friendship, make_h, make_path, union
from .graph import Graph, _bits, canonical_form, components, parse_graph6


def _pattern_order(pattern: Graph) -> list[int]:
    """Pattern vertices: components largest first, each grown greedily from a max-degree vertex."""
    comps = sorted(components(pattern), key=lambda c: (-bin(c).count("1"), c & -c))
    deg = pattern.degrees()
    order: list[int] = []
    for comp in comps:
        placed = 0
        remaining = comp
        while remaining:
            # most already-placed neighbours first, then highest degree
            v = max(
                _bits(remaining),
                key=lambda u: (bin(pattern.adj[u] & placed).count("1"), deg[u], -u),
            )
            order.append(v)
            placed |= 1 << v
            remaining &= ~(1 << v)
    return order


def contains_subgraph(host: Graph, pattern: Graph) -> list[int] | None:
    """Witness embedding (pattern vertex -> host vertex) of ``pattern`` in ``host``, or None."""
    if pattern.n > host.n or pattern.m > host.m:
        return None
    hdeg = host.degrees()
    pdeg = pattern.degrees()
    if any(p > h for p, h in zip(sorted(pdeg, reverse=True), sorted(hdeg, reverse=True))):
        return None
    order = _pattern_order(pattern)
    at_least = {}
    for d in set(pdeg):
        mask = 0
        for v, hd in enumerate(hdeg):
            if hd >= d:
                mask |= 1 << v
        at_least[d] = mask
    # earlier pattern neighbours of each vertex in the matching order
    pos = {v: i for i, v in enumerate(order)}
    back = [[u for u in _bits(pattern.adj[v]) if pos[u] < pos[v]] for v in order]
    image = [0] * pattern.n
    hadj = host.adj
    full = (1 << host.n) - 1

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        cand = at_least[pdeg[p]] & ~used & full
        for q in back[i]:
            cand &= hadj[image[q]]
            if not cand:
                return False
        for h in _bits(cand):
            image[p] = h
            if extend(i + 1, used | 1 << h):
                return True
        return False

    if extend(0, 0):
        return list(image)
    return None


def is_h43_free(g: Graph) -> bool:
    """True iff no vertex carries a triangle and a 4-cycle meeting only at that vertex."""
    adj = g.adj
    for v in range(g.n):
        nv = adj[v]
        if bin(nv).count("1") < 4:
            continue
        for a in _bits(nv):
            tri = adj[a] & nv & ~((1 << (a + 1)) - 1)
            for b in _bits(tri):
                avoid = (1 << v) | (1 << a) | (1 << b)
                rest = nv & ~avoid
                for c in _bits(rest):
                    ac = adj[c] & ~avoid
                    if not ac:
                        continue
                    for d in _bits(rest & ~((1 << (c + 1)) - 1)):
                        if ac & adj[d]:
                            return False
    return True


@lru_cache(maxsize=None)
def _p2p3() -> Graph:
    return union(make_path(2), make_path(3))


def is_p2p3_free(g: Graph) -> bool:
    return contains_subgraph(g, _p2p3()) is None


_NAMED = {
    "h43": lambda: make_h(4, 3),
    "h33": lambda: make_h(3, 3),
    "f5": lambda: make_fan(5),
    "p2p3": _p2p3,
    "k3": lambda: make_path(3).add_edge(0, 2),
    "c4": lambda: make_path(4).add_edge(0, 3),
    "friendship2": lambda: make_friendship(2),
}


def named_pattern(name: str) -> Graph:
    """Pattern by short name (h43, h33, f5, p2p3, k3, c4) or graph6 string."""
    key = name.strip().lower().replace("(", "").replace(")", "").replace(",", "")
    if key in _NAMED:
        return _NAMED[key]()
    return parse_graph6(name)


@lru_cache(maxsize=None)
def _h43_form() -> bytes:
    return canonical_form(make_h(4, 3))


def is_free(g: Graph, pattern: Graph) -> bool:
    """H-freeness, routed to the specialised detector when ``pattern`` is H(4,3)."""
    if pattern.n == 6 and pattern.m == 7 and canonical_form(pattern) == _h43_form():
        return is_h43_free(g)
    return contains_subgraph(g, pattern) is None


def is_free_of_all(g: Graph, patterns: Sequence[Graph]) -> bool:
    return all(is_free(g, p) for p in patterns)


@lru_cache(maxsize=None)
def catalog_p2p3_free(n_max: int) -> tuple[bytes, ...]:
    """Canonical forms of all connected (P2 u P3)-free graphs with an edge and order <= n_max."""
    if n_max > 10:
        raise ValueError("catalog_p2p3_free supports n_max <= 10")
    from .enumeration import grow_connected

    out = []
    for level in grow_connected([_p2p3()], max_order=n_max):
        out.extend(level)
    return tuple(sorted(out, key=lambda f: (len(f), f)))


@lru_cache(maxsize=None)
def _catalog_set(n_max: int) -> frozenset:
    return frozenset(catalog_p2p3_free(n_max))


def in_p2p3_catalog(g: Graph, n_max: int = 10) -> bool:
    """Membership in the catalog; larger orders fall back to its defining predicate."""
    from .graph import is_connected

    if g.m == 0:
        return False
    if g.n <= n_max:
        return canonical_form(g) in _catalog_set(n_max)
    return is_connected(g) and is_p2p3_free(g)
