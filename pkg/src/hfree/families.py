"""Constructors for the named graph families.

Numbering convention: dominating or hub vertices come first.  For the
``S`` family vertices 0 and 1 form the spine edge; pendant and leaf vertices
come last.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import MAX_ORDER, Graph, GraphError, from_edges


class FamilyError(ValueError):
    pass


class UnresolvedFigureError(FamilyError):
    """Catalog members whose shape is only given pictorially."""


def make_s(n: int) -> Graph:
    """K2 joined to n-2 independent vertices; size 2n-3."""
    if n < 3:
        raise FamilyError("S_{n,2} needs n >= 3")
    edges = [(0, 1)] + [(h, v) for v in range(2, n) for h in (0, 1)]
    return from_edges(n, edges)


def make_s_minus(n: int) -> Graph:
    """``make_s(n)`` with the edge from vertex 1 to the last vertex removed.

    The last vertex becomes the unique pendant, hanging off vertex 0.
    """
    if n < 4:
        raise FamilyError("S^-_{n,2} needs n >= 4")
    return make_s(n).remove_edge(1, n - 1)


def make_h(k: int, l: int) -> Graph:
    """Cycles of lengths k and l glued at vertex 0."""
    if k < 3 or l < 3:
        raise FamilyError("H(k,l) needs k, l >= 3")
    n = k + l - 1
    first = [0] + list(range(1, k))
    second = [0] + list(range(k, n))
    edges = []
    for cyc in (first, second):
        edges += [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
    return from_edges(n, edges)


def make_f_prime(m: int, l: int, hub: int = 0) -> Graph:
    """S_{(m-l+3)/2,2} with l pendants attached to a maximum-degree vertex.

    ``hub`` picks which spine vertex (0 or 1) receives the pendants; the two
    choices are isomorphic.
    """
    if l < 0:
        raise FamilyError("pendant count must be non-negative")
    if (m - l) % 2 == 0:
        raise FamilyError(f"m - l must be odd, got m={m}, l={l}")
    if m <= l + 1 or m - l < 3:
        raise FamilyError(f"need m > l + 1 and m - l >= 3, got m={m}, l={l}")
    if hub not in (0, 1):
        raise FamilyError("hub must be 0 or 1")
    core = (m - l + 3) // 2
    n = core + l
    if n > MAX_ORDER:
        raise GraphError("capacity exceeded")
    edges = make_s(core).edges() + [(hub, core + i) for i in range(l)]
    return from_edges(n, edges)


def make_fan(t: int) -> Graph:
    """K1 joined to the path P_t; vertex 0 is the apex."""
    if t < 1:
        raise FamilyError("fan needs t >= 1")
    return join(make_complete(1), make_path(t))


def make_friendship(k: int) -> Graph:
    """k triangles sharing vertex 0."""
    if k < 1:
        raise FamilyError("friendship graph needs k >= 1")
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return from_edges(2 * k + 1, edges)


def make_star(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    if t < 1:
        raise FamilyError("star needs t >= 1")
    return from_edges(t + 1, [(0, i) for i in range(1, t + 1)])


def make_path(n: int) -> Graph:
    if n < 1:
        raise FamilyError("path needs n >= 1")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError("cycle needs n >= 3")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(n: int) -> Graph:
    if n < 1:
        raise FamilyError("complete graph needs n >= 1")
    return from_edges(n, combinations(range(n), 2))


def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise FamilyError("complete bipartite graph needs both sides non-empty")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def make_empty(n: int) -> Graph:
    return from_edges(n, [])


def union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_ORDER:
        raise GraphError("capacity exceeded")
    return from_edges(g.n + h.n, g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()])


def join(g: Graph, h: Graph) -> Graph:
    u = union(g, h)
    cross = [(a, g.n + b) for a in range(g.n) for b in range(h.n)]
    return from_edges(u.n, u.edges() + cross)


_CATALOG_CONSTRUCTORS = {
    1: lambda t: make_path(4),
    2: lambda t: make_cycle(3),
    5: lambda t: make_complete(4).remove_edge(2, 3),
    6: lambda t: make_complete(4),
    7: lambda t: make_star(t),
}

# Members only available as pictures.  ``adopt_catalog_candidates`` fills
# these from the enumerated catalog.
_ADOPTED: dict[int, Graph] = {}


def adopt_catalog_candidates(h3: Graph, h4: Graph) -> None:
    """Register concrete graphs for the two pictorial catalog members."""
    _ADOPTED[3] = h3
    _ADOPTED[4] = h4


def make_catalog_h(i: int, t: int = 1) -> Graph:
    if i in (3, 4):
        if i in _ADOPTED:
            return _ADOPTED[i]
        raise UnresolvedFigureError(
            f"H_{i} is not recoverable from text; adopt oracle candidates first"
        )
    if i not in _CATALOG_CONSTRUCTORS:
        raise FamilyError("catalog index must be in 1..7")
    if i == 7 and t < 1:
        raise FamilyError("H_7 = K_{1,t} needs t >= 1")
    return _CATALOG_CONSTRUCTORS[i](t)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()

    def build(self) -> Graph:
        return build_family(self)


_BUILDERS = {
    "S": (make_s, 1),
    "S_MINUS": (make_s_minus, 1),
    "F_PRIME": (make_f_prime, 2),
    "H_KL": (make_h, 2),
    "FAN": (make_fan, 1),
    "FRIENDSHIP": (make_friendship, 1),
    "STAR": (make_star, 1),
    "PATH": (make_path, 1),
    "CYCLE": (make_cycle, 1),
    "COMPLETE": (make_complete, 1),
    "COMPLETE_BIPARTITE": (make_complete_bipartite, 2),
    "H_CATALOG": (make_catalog_h, None),
    "EMPTY": (make_empty, 1),
}

_ALIASES = {
    "SMINUS": "S_MINUS",
    "S-": "S_MINUS",
    "FPRIME": "F_PRIME",
    "H": "H_KL",
    "HKL": "H_KL",
    "K": "COMPLETE",
    "KAB": "COMPLETE_BIPARTITE",
    "BIPARTITE": "COMPLETE_BIPARTITE",
    "P": "PATH",
    "C": "CYCLE",
    "F": "FAN",
    "FRIEND": "FRIENDSHIP",
    "CATALOG": "H_CATALOG",
}


def build_family(spec: FamilySpec) -> Graph:
    name = spec.family.upper().replace("-", "_")
    name = _ALIASES.get(name, name)
    if name in ("JOIN", "UNION"):
        raise FamilyError("JOIN/UNION take graphs, use join()/union() directly")
    if name not in _BUILDERS:
        raise FamilyError(f"unknown family {spec.family!r}")
    fn, arity = _BUILDERS[name]
    if arity is not None and len(spec.params) != arity:
        raise FamilyError(f"{name} takes {arity} parameter(s), got {len(spec.params)}")
    return fn(*spec.params)


def parse_family_spec(text: str) -> FamilySpec:
    """Parse ``name:p1,p2`` (also ``name(p1,p2)``), e.g. ``s_minus:21`` or ``h(4,3)``."""
    text = text.strip()
    if "(" in text and text.endswith(")"):
        name, args = text[:-1].split("(", 1)
    elif ":" in text:
        name, args = text.split(":", 1)
    else:
        name, args = text, ""
    try:
        params = tuple(int(a) for a in args.split(",") if a.strip())
    except ValueError as exc:
        raise FamilyError(f"bad family parameters in {text!r}") from exc
    return FamilySpec(name.strip(), params)
