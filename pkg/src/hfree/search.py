"""Local search for large spectral radius under forbidden-subgraph constraints.

Moves are edge relocations ``G - e + f``.  A move is accepted when the
result stays H-free, the current Perron vector does not lose Rayleigh
quotient on it, and the spectral radius strictly increases.  Proposals
are tried in order of their first-order gain.  Relocating
the only edge of a vertex deletes that vertex, so every graph along a
trace is connected-size-m with no isolated vertices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, from_edges, has_isolated_vertex, is_connected, write_graph6
from .spectral import spectral_radius
from .subgraph import is_free_of_all

RHO_STEP = 1e-12
TIE = 1e-10


class SearchError(RuntimeError):
    pass


def hub_vertex(x: np.ndarray) -> int:
    """Lowest-index vertex whose Perron coordinate is within 1e-10 of the max."""
    top = float(np.max(x))
    return int(np.flatnonzero(x >= top - TIE * max(1.0, top))[0])


def rotate_to_hub(g: Graph, w: int, v: int, perron: np.ndarray | None = None) -> Graph:
    """Return ``G - wv + wu*`` with ``u*`` the hub of ``g``'s Perron vector.

    The vertex set is kept, so ``v`` may be left isolated.
    """
    if not g.has_edge(w, v):
        raise GraphError(f"({w},{v}) is not an edge")
    x = spectral_radius(g).perron if perron is None else perron
    u = hub_vertex(x)
    if w == u or g.has_edge(w, u):
        raise GraphError(f"vertex {w} is already the hub or adjacent to it")
    return g.remove_edge(w, v).add_edge(w, u)


def random_hfree_graph(m: int, forbidden: Sequence[Graph], rng_seed=0,
                       max_attempts: int | None = None) -> Graph:
    """Connected graph with m edges avoiding every pattern, by randomised edge insertion.

    Every draw picks its own closing probability and degree preference
    exponent: endpoints are sampled with weight ``(deg + 1) ** alpha`` and
    the second endpoint is either an existing non-neighbour or a new vertex.
    Candidates that create a forbidden pattern are rejected.
    """
    if m < 1:
        raise SearchError("m must be positive")
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    attempts = max_attempts or 400 * m
    close_p = rng.random()
    alpha = rng.uniform(0.0, 3.0)
    g = from_edges(2, [(0, 1)])
    tries = 0
    while g.m < m:
        tries += 1
        if tries > attempts:
            raise SearchError(f"could not build an H-free graph with m={m} (seed budget exhausted)")
        weights = [(d + 1) ** alpha for d in g.degrees()]
        u = rng.choices(range(g.n), weights=weights)[0]
        if rng.random() < close_p:
            others = [v for v in range(g.n) if v != u and not g.has_edge(u, v)]
            v = rng.choices(others, weights=[weights[c] for c in others])[0] if others else g.n
        else:
            v = g.n
        cand = g.add_edge(u, v)
        if is_free_of_all(cand, forbidden):
            g = cand
    return g


@dataclass
class SearchConfig:
    m: int
    forbidden: tuple[Graph, ...] = ()
    restarts: int = 50
    move_budget: int = 500
    rng_seed: int = 20240601
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1 or self.move_budget < 1:
            raise SearchError("restarts and move_budget must be >= 1")


@dataclass
class Move:
    kind: str
    removed: tuple[int, int]
    added: tuple[int, int]
    rho_after: float
    graph6: str


@dataclass
class RestartTrace:
    index: int
    start_graph6: str
    start_rho: float
    moves: list[Move] = field(default_factory=list)
    final_graph6: str = ""
    final_rho: float = 0.0
    stop: str = ""
    # reserved for non-monotone acceptance schedules
    temperature: float | None = None


@dataclass
class SearchTrace:
    config: SearchConfig
    restarts: list[RestartTrace]
    best_graph: Graph
    best_rho: float

    def hit_rate(self, target: float, tol: float = 1e-6) -> float:
        hits = sum(abs(r.final_rho - target) <= tol for r in self.restarts)
        return hits / len(self.restarts)


def _compact(g: Graph) -> Graph:
    return g.drop_isolated() if has_isolated_vertex(g) else g


def _proposals(g: Graph, x: np.ndarray, rng: random.Random):
    hub = hub_vertex(x)
    edges = g.edges()
    non_edges = g.non_edges()
    props = []
    for a, b in edges:
        for w, v in ((a, b), (b, a)):
            if w != hub and v != hub and not g.has_edge(w, hub):
                props.append(("rotate", (w, v), (min(w, hub), max(w, hub))))
    for e in edges:
        for f in non_edges:
            props.append(("relocate", e, f))
    rng.shuffle(props)
    # largest first-order gain x_c x_d - x_a x_b first; the shuffle breaks ties
    props.sort(key=lambda q: x[q[1][0]] * x[q[1][1]] - x[q[2][0]] * x[q[2][1]])
    return props


def _climb(index: int, cfg: SearchConfig) -> RestartTrace:
    rng = random.Random(f"{cfg.rng_seed}:{index}")
    g = random_hfree_graph(cfg.m, cfg.forbidden, rng)
    res = spectral_radius(g)
    trace = RestartTrace(index, write_graph6(g), res.rho)
    for _ in range(cfg.move_budget):
        x = res.perron
        improved = False
        for kind, (a, b), (c, d) in _proposals(g, x, rng):
            # Rayleigh gate: x^T A' x - x^T A x = 2 (x_c x_d - x_a x_b);
            # proposals are sorted by this gain, so the rest fail too
            if x[c] * x[d] < x[a] * x[b]:
                break
            cand = g.remove_edge(a, b).add_edge(c, d)
            if not is_free_of_all(cand, cfg.forbidden):
                continue
            cand = _compact(cand)
            if not is_connected(cand):
                continue
            new = spectral_radius(cand)
            if new.rho > res.rho + RHO_STEP:
                g, res = cand, new
                trace.moves.append(Move(kind, (a, b), (c, d), new.rho, write_graph6(g)))
                improved = True
                break
        if not improved:
            trace.stop = "local_optimum"
            break
    else:
        trace.stop = "budget"
    trace.final_graph6 = write_graph6(g)
    trace.final_rho = res.rho
    return trace


def _climb_job(args):
    return _climb(*args)


def hill_climb(cfg: SearchConfig) -> SearchTrace:
    """Run ``cfg.restarts`` independent climbs; deterministic given the config."""
    jobs = [(i, cfg) for i in range(cfg.restarts)]
    if cfg.workers > 1:
        from multiprocessing import Pool

        with Pool(cfg.workers) as pool:
            traces = pool.map(_climb_job, jobs)
    else:
        traces = [_climb_job(j) for j in jobs]
    best = max(traces, key=lambda t: (t.final_rho, -t.index))
    from .graph import parse_graph6

    return SearchTrace(cfg, traces, parse_graph6(best.final_graph6), best.final_rho)


def check_trace(trace: SearchTrace) -> list[str]:
    """Problems found in a trace (empty when feasibility, size and monotonicity hold)."""
    from .graph import parse_graph6

    problems = []
    cfg = trace.config
    for r in trace.restarts:
        prev = r.start_rho
        graphs = [r.start_graph6] + [mv.graph6 for mv in r.moves]
        for g6 in graphs:
            g = parse_graph6(g6)
            if g.m != cfg.m:
                problems.append(f"restart {r.index}: size {g.m} != {cfg.m}")
            if has_isolated_vertex(g) or not is_connected(g):
                problems.append(f"restart {r.index}: {g6} has isolated vertices or is disconnected")
            if not is_free_of_all(g, cfg.forbidden):
                problems.append(f"restart {r.index}: {g6} contains a forbidden pattern")
        for mv in r.moves:
            if not mv.rho_after > prev:
                problems.append(f"restart {r.index}: rho did not increase at {mv}")
            prev = mv.rho_after
    return problems
