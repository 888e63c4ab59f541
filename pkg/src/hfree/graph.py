"""Immutable simple graphs on at most 128 vertices.

Each vertex row is a Python int used as a neighbour bitset, so adjacency tests
and neighbourhood intersections are single integer operations.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 128


class GraphError(ValueError):
    """Raised for invalid graph construction or malformed interchange input."""


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Instances are hashable and never mutated; editing helpers return new graphs.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_ORDER:
            raise GraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
        if len(adj) != n:
            raise GraphError("adjacency length does not match order")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "m", sum(bin(r).count("1") for r in adj) // 2)

    def __setattr__(self, key, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, g6={write_graph6(self)!r})"

    # -- queries ---------------------------------------------------------
    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(r).count("1") for r in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.adj[u] >> v & 1]

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def edges_within(self, mask: int) -> int:
        """Number of edges with both ends in the vertex set ``mask``."""
        return sum(bin(self.adj[v] & mask).count("1") for v in _bits(mask)) // 2

    def edges_between(self, s: int, t: int) -> int:
        """Number of edges with one end in ``s`` and the other in ``t`` (disjoint sets)."""
        return sum(bin(self.adj[v] & t).count("1") for v in _bits(s))

    # -- edits -----------------------------------------------------------
    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError("loops are not allowed")
        if max(u, v) < self.n and self.has_edge(u, v):
            raise GraphError(f"({u},{v}) is already an edge")
        adj = list(self.adj)
        if max(u, v) == self.n:
            if self.n == MAX_ORDER:
                raise GraphError("capacity exceeded")
            adj.append(0)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(len(adj), adj)

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            r = 0
            for u in _bits(row):
                r |= 1 << perm[u]
            adj[perm[v]] = r
        return Graph(self.n, adj)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        adj = []
        for v in vs:
            r = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    r |= 1 << index[u]
            adj.append(r)
        return Graph(len(vs), adj)

    def drop_isolated(self) -> "Graph":
        """Remove isolated vertices (keeps one vertex if the graph is edgeless)."""
        keep = [v for v in range(self.n) if self.adj[v]]
        if len(keep) == self.n:
            return self
        return self.induced(keep or [0])


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"order must be in 1..{MAX_ORDER}, got {n}")
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop pair ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in ({u},{v}) for n={n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def components(g: Graph) -> list[int]:
    """Connected components as vertex bitsets, ordered by lowest vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def min_degree(g: Graph) -> int:
    return min(g.degrees())


def has_isolated_vertex(g: Graph) -> bool:
    return any(r == 0 for r in g.adj)


def bridges(g: Graph) -> set[tuple[int, int]]:
    """Bridge edges ``(u, v)`` with ``u < v``."""
    disc = [-1] * g.n
    low = [0] * g.n
    out = set()
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if disc[u] < 0:
                    disc[u] = low[u] = t
                    t += 1
                    stack.append((u, v, iter(g.neighbors(u))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[u])
            if not advanced:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add((min(v, parent), max(v, parent)))
    return out


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for u in _bits(g.adj[v]):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


# -- graph6 --------------------------------------------------------------

def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    bits = []
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return bytes(head + body).decode("ascii")


def parse_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise GraphError("invalid character in graph6 string")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise GraphError("unsupported or malformed graph6 order header")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"graph6 order {n} outside 1..{MAX_ORDER}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphError("nonzero padding bits in graph6 string")
    return Graph(n, adj)


# -- canonical labelling -------------------------------------------------

def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Each pass splits every cell by the vector of neighbour counts into all
    current cells; sub-cells are ordered by that vector, which keeps the
    result independent of vertex names.
    """
    adj = g.adj
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                row = adj[v]
                key = tuple(bin(row & mk).count("1") for mk in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new.append(c)
            else:
                new.extend(groups[k] for k in sorted(groups))
        if len(new) == len(cells):
            return new
        cells = new


def _twin_transpositions(g: Graph) -> list[dict[int, int]]:
    gens = []
    for u, v in combinations(range(g.n), 2):
        mask = ~((1 << u) | (1 << v))
        if g.adj[u] & mask == g.adj[v] & mask:
            gens.append({u: v, v: u})
    return gens


def canonical_labeling(g: Graph) -> list[int]:
    """Permutation ``perm`` (vertex -> canonical position) of a canonical relabelling.

    Individualisation-refinement search; subtrees are pruned with the
    automorphisms found so far (twin transpositions are seeded up front).
    """
    n = g.n
    adj = g.adj
    best_cert = None
    best_order = None
    autos = _twin_transpositions(g)

    def certificate(order):
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        rows = []
        for v in order:
            r = 0
            for u in _bits(adj[v]):
                r |= 1 << pos[u]
            rows.append(r)
        return tuple(rows)

    def search(cells, fixed):
        nonlocal best_cert, best_order
        if len(cells) == n:
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best_cert is None or cert > best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                # order -> best_order maps one labelling onto the other
                autos.append({a: b for a, b in zip(order, best_order) if a != b})
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        cell = cells[idx]
        done: list[int] = []
        for v in sorted(cell):
            if done and _in_orbit_of(v, done, fixed, autos):
                continue
            done.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1 :]
            search(_refine(g, child), fixed + [v])

    search(_refine(g, [list(range(n))]), [])
    perm = [0] * n
    for i, v in enumerate(best_order):
        perm[v] = i
    return perm


def _in_orbit_of(v: int, reps: list[int], fixed: list[int], autos) -> bool:
    """Whether ``v`` is mapped onto one of ``reps`` by automorphisms fixing ``fixed``."""
    usable = [a for a in autos if all(a.get(f, f) == f for f in fixed)]
    seen = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for a in usable:
            y = a.get(x, x)
            if y not in seen:
                if y in reps:
                    return True
                seen.add(y)
                frontier.append(y)
    return False


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> bytes:
    """Relabelling-invariant byte string; equal iff the graphs are isomorphic."""
    return write_graph6(canonical_graph(g)).encode("ascii")
