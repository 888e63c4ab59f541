"""Isomorph-free generation of connected graphs by edge count.

Generation uses canonical parents: a child graph C is kept only when
``C - e*`` is isomorphic to the parent it was grown from, where ``e*`` is a
removable edge of C chosen by an isomorphism-invariant rule.  Children of
one parent are deduplicated by canonical form.  Forbidden-subgraph filters
prune during growth, which is sound because containment is monotone under
edge addition and the canonical parent of an H-free graph is H-free.
"""
from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Sequence

import mpmath

from .graph import (
    MAX_ORDER,
    Graph,
    bridges,
    canonical_form,
    canonical_labeling,
    from_edges,
    is_connected,
    parse_graph6,
    write_graph6,
)
from .spectral import char_poly, size_bound, spectral_radius
from .subgraph import is_free_of_all

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_M = 14
TIE_TOL = 1e-9


class EnumerationError(RuntimeError):
    pass


class CheckpointError(EnumerationError):
    pass


@dataclass
class RunRecord:
    graph6: str
    m: int
    n: int
    rho: float
    is_extremal: bool = False
    flags: dict = field(default_factory=dict)

    def graph(self) -> Graph:
        return parse_graph6(self.graph6)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        d = json.loads(line)
        rec = cls(
            graph6=str(d["graph6"]),
            m=int(d["m"]),
            n=int(d["n"]),
            rho=float(d["rho"]),
            is_extremal=bool(d.get("is_extremal", False)),
            flags=dict(d.get("flags", {})),
        )
        g = rec.graph()
        if (g.n, g.m) != (rec.n, rec.m):
            raise ValueError(f"record {rec.graph6} does not match n={rec.n}, m={rec.m}")
        return rec


def make_record(g: Graph, filters_passed: Sequence[str] = ()) -> RunRecord:
    rho = spectral_radius(g).rho
    bound = size_bound(g.m)
    extremal = bound is not None and abs(rho - bound) <= TIE_TOL
    flags = {name: True for name in filters_passed}
    return RunRecord(write_graph6(g), g.m, g.n, rho, extremal, flags)


@dataclass(frozen=True)
class EnumerationTask:
    m: int
    filters: tuple[Graph, ...] = ()
    restrict_connected: bool = True
    prefix_depth: int | None = None
    filter_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise EnumerationError("m must be positive")
        if self.m > EXHAUSTIVE_MAX_M:
            raise EnumerationError(
                f"m={self.m} exceeds the exhaustive budget {EXHAUSTIVE_MAX_M}; use hfree.search"
            )

    @property
    def n_min(self) -> int:
        n = 2
        while n * (n - 1) // 2 < self.m:
            n += 1
        return n

    @property
    def n_max(self) -> int:
        return self.m + 1

    @property
    def depth(self) -> int:
        if self.prefix_depth is not None:
            return max(1, min(self.m, self.prefix_depth))
        return min(self.m, 5)

    def fingerprint(self) -> str:
        payload = {
            "m": self.m,
            "filters": sorted(canonical_form(f).decode() for f in self.filters),
            "connected": self.restrict_connected,
            "depth": self.depth,
            "version": 1,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


# -- core growth ---------------------------------------------------------

def _removable_edges(g: Graph) -> list[tuple[int, int]]:
    """Edges whose deletion (dropping a stranded leaf) leaves a connected graph."""
    br = bridges(g)
    adj = g.adj
    out = []
    for e in g.edges():
        if e not in br or adj[e[0]] & (adj[e[0]] - 1) == 0 or adj[e[1]] & (adj[e[1]] - 1) == 0:
            out.append(e)
    return out


def _edge_key(deg, e):
    a, b = deg[e[0]], deg[e[1]]
    return (a, b) if a > b else (b, a)


def _children(parent: Graph, parent_form: bytes, filters, max_order: int):
    """Canonical children of ``parent`` with one more edge, as (graph, form) pairs."""
    n = parent.n
    pdeg = parent.degrees()
    cands = parent.non_edges()
    if n < max_order:
        cands += [(u, n) for u in range(n)]
    seen: set[bytes] = set()
    out = []
    for u, v in cands:
        child = parent.add_edge(u, v)
        deg = pdeg + [0] if v == n else list(pdeg)
        deg[u] += 1
        deg[v] += 1
        removable = _removable_edges(child)
        best = max(_edge_key(deg, e) for e in removable)
        if _edge_key(deg, (u, v)) != best:
            continue
        if filters and not is_free_of_all(child, filters):
            continue
        perm = canonical_labeling(child)
        cgraph = child.relabel(perm)
        form = write_graph6(cgraph).encode("ascii")
        if form in seen:
            continue
        ties = [e for e in removable if _edge_key(deg, e) == best]
        if len(ties) > 1:
            star = max(ties, key=lambda e: sorted((perm[e[0]], perm[e[1]]), reverse=True))
            if star != (u, v) and canonical_form(child.remove_edge(*star).drop_isolated()) != parent_form:
                continue
        seen.add(form)
        out.append((cgraph, form))
    return out


def _root() -> tuple[Graph, bytes]:
    k2 = from_edges(2, [(0, 1)])
    return k2, canonical_form(k2)


def grow_connected(filters: Sequence[Graph] = (), max_order: int = MAX_ORDER,
                   max_edges: int | None = None) -> Iterator[list[bytes]]:
    """Yield, level by level (1, 2, ... edges), canonical forms of connected filtered graphs.

    Stops when a level is empty or ``max_edges`` is reached.
    """
    level = [_root()]
    if filters and not is_free_of_all(level[0][0], filters):
        return
    m = 1
    while level:
        yield [f for _, f in level]
        if max_edges is not None and m >= max_edges:
            return
        nxt = []
        for g, f in level:
            nxt.extend(_children(g, f, filters, max_order))
        level = nxt
        m += 1


def _frontier(task: EnumerationTask) -> list[tuple[Graph, bytes]]:
    level = [_root()]
    if task.filters and not is_free_of_all(level[0][0], task.filters):
        return []
    for _ in range(task.depth - 1):
        nxt = []
        for g, f in level:
            nxt.extend(_children(g, f, task.filters, task.n_max))
        level = nxt
    return level


def _expand_prefix(task: EnumerationTask, prefix_g6: str, compute_rho: bool = True) -> list[RunRecord]:
    g = parse_graph6(prefix_g6)
    out = []
    stack = [(g, canonical_form(g))]
    while stack:
        h, f = stack.pop()
        if h.m == task.m:
            if compute_rho:
                out.append(make_record(h, task.filter_names))
            else:
                out.append(RunRecord(write_graph6(h), h.m, h.n, math.nan))
            continue
        stack.extend(_children(h, f, task.filters, task.n_max))
    return out


def _worker(args):
    task, idx, prefix, compute_rho = args
    return idx, _expand_prefix(task, prefix, compute_rho)


# -- checkpoints ---------------------------------------------------------

def new_checkpoint(task: EnumerationTask) -> dict:
    return {
        "version": 1,
        "fingerprint": task.fingerprint(),
        "m": task.m,
        "prefixes": [write_graph6(g) for g, _ in _frontier(task)],
        "completed": [],
        "count": 0,
        "best": None,
    }


def save_checkpoint(path: str, state: dict) -> None:
    """Atomically replace ``path`` with ``state`` as JSON."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ckpt-")
    with os.fdopen(fd, "w") as fh:
        json.dump(state, fh)
    os.replace(tmp, path)


def resume(path: str, task: EnumerationTask) -> dict:
    """Load a checkpoint for ``task``; a missing file yields a fresh checkpoint."""
    if not os.path.exists(path):
        return new_checkpoint(task)
    try:
        with open(path) as fh:
            state = json.load(fh)
        completed = state["completed"]
        prefixes = state["prefixes"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from exc
    if state.get("fingerprint") != task.fingerprint():
        raise CheckpointError(f"checkpoint {path} belongs to a different task")
    if len(completed) != len(set(completed)) or any(not 0 <= i < len(prefixes) for i in completed):
        raise CheckpointError(f"corrupt completion list in {path}")
    return state


# -- public drivers ------------------------------------------------------

def enumerate_connected(
    task: EnumerationTask,
    consumer: Callable[[RunRecord], None],
    checkpoint: str | None = None,
    workers: int = 1,
    stop_after: int | None = None,
    compute_rho: bool = True,
) -> int:
    """Call ``consumer`` once per isomorphism class with ``task.m`` edges passing the filters.

    Work is split over the classes at ``task.depth`` edges (the prefixes).
    With ``checkpoint`` set, completed prefixes are recorded after each one
    finishes and skipped on the next call.  ``stop_after`` processes at most
    that many prefixes, then returns (simulates an interruption).  Returns
    the total number of classes emitted across all runs sharing the checkpoint.
    """
    if not task.restrict_connected:
        if checkpoint is not None:
            raise EnumerationError("checkpointing is only supported for connected enumeration")
        count = 0
        for rec in _enumerate_no_isolated(task, compute_rho):
            consumer(rec)
            count += 1
        return count

    state = resume(checkpoint, task) if checkpoint else new_checkpoint(task)
    done = set(state["completed"])
    todo = [i for i in range(len(state["prefixes"])) if i not in done]
    if stop_after is not None:
        todo = todo[:stop_after]
    jobs = [(task, i, state["prefixes"][i], compute_rho) for i in todo]

    def absorb(idx, records):
        for rec in records:
            consumer(rec)
            best = state["best"]
            if compute_rho and (best is None or rec.rho > best["rho"] + TIE_TOL):
                state["best"] = asdict(rec)
        state["count"] += len(records)
        state["completed"].append(idx)
        if checkpoint:
            save_checkpoint(checkpoint, state)

    if workers > 1 and len(jobs) > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            for idx, records in pool.imap_unordered(_worker, jobs):
                absorb(idx, records)
    else:
        for job in jobs:
            absorb(*_worker(job))
    return state["count"]


def _partitions(m: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = m if largest is None else largest
    if m == 0:
        yield []
        return
    for part in range(min(m, largest), 0, -1):
        for rest in _partitions(m - part, part):
            yield [part] + rest


def _enumerate_no_isolated(task: EnumerationTask, compute_rho: bool) -> Iterator[RunRecord]:
    """Graphs with ``m`` edges and no isolated vertex, as unions of connected classes."""
    by_size: dict[int, list[Graph]] = {}
    for k, forms in enumerate(grow_connected(task.filters, max_edges=task.m), start=1):
        by_size[k] = [parse_graph6(f.decode()) for f in forms]
    from .families import union

    seen: set[bytes] = set()
    for parts in _partitions(task.m):
        groups: dict[int, int] = {}
        for p in parts:
            groups[p] = groups.get(p, 0) + 1
        choices = [list(combinations_with_replacement(by_size.get(size, []), cnt))
                   for size, cnt in sorted(groups.items())]
        for combo in _product(choices):
            graphs = [g for block in combo for g in block]
            total = graphs[0]
            for h in graphs[1:]:
                total = union(total, h)
            if task.filters and not is_free_of_all(total, task.filters):
                continue
            form = canonical_form(total)
            if form in seen:
                continue
            seen.add(form)
            if compute_rho:
                yield make_record(total, task.filter_names)
            else:
                yield RunRecord(write_graph6(total), total.m, total.n, math.nan)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


@dataclass
class ExtremalResult:
    graph: Graph
    rho: float
    unique: bool
    count: int
    ties: list[str]


def _exact_rho(g: Graph, approx: float, dps: int = 60):
    coeffs = char_poly(g)
    with mpmath.workdps(dps):
        return mpmath.findroot(lambda x: mpmath.polyval(coeffs, x), mpmath.mpf(approx))


def extremal_search(m: int, forbidden: Sequence[Graph] = (), workers: int = 1,
                    names: Sequence[str] = ()) -> ExtremalResult:
    """Maximiser of the spectral radius over connected forbidden-free graphs with m edges."""
    task = EnumerationTask(m, tuple(forbidden), filter_names=tuple(names))
    records: list[RunRecord] = []
    enumerate_connected(task, records.append, workers=workers)
    if not records:
        raise EnumerationError(f"no admissible graphs with m={m}")
    top = max(r.rho for r in records)
    near = [r for r in records if top - r.rho <= TIE_TOL]
    near.sort(key=lambda r: -r.rho)
    winner = near[0]
    unique = True
    if len(near) > 1:
        # Resolve numerical ties exactly before declaring non-uniqueness.
        exact = {r.graph6: _exact_rho(r.graph(), r.rho) for r in near}
        best = max(exact.values())
        tied = [g6 for g6, val in exact.items() if abs(val - best) < mpmath.mpf(10) ** -40]
        winner = next(r for r in near if r.graph6 == tied[0])
        unique = len(tied) == 1
        ties = tied
    else:
        ties = [winner.graph6]
    return ExtremalResult(winner.graph(), winner.rho, unique, len(records), ties)


def read_records(lines: Iterable[str]) -> tuple[list[RunRecord], int]:
    """Parse JSONL records; returns (records, number of malformed lines skipped)."""
    out, bad = [], 0
    for line in lines:
        if not line.strip():
            continue
        try:
            out.append(RunRecord.from_json(line))
        except Exception as exc:  # malformed lines are counted, not fatal
            log.warning("skipping malformed record: %s", exc)
            bad += 1
    return out, bad
