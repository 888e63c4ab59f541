"""Executable acceptance criteria, shared by ``hfree verify`` and the test suite."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .audit import audit_s_minus
from .enumeration import extremal_search
from .families import make_f_prime, make_h, make_s, make_s_minus
from .graph import Graph, canonical_form, from_edges
from .search import SearchConfig, check_trace, hill_climb
from .spectral import lemma22_bound, odd_bound, rho_prime, spectral_radius
from .subgraph import catalog_p2p3_free, contains_subgraph, is_h43_free, named_pattern


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number, name, fn, *args, **kw) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = fn(*args, **kw)
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t0)


def _even_range():
    return range(6, 201, 2)


def quartic_agreement():
    worst = max(abs(rho_prime(m) - spectral_radius(make_s_minus((m + 4) // 2)).rho)
                for m in _even_range())
    return worst <= 1e-9, f"max |rho'(m) - rho(S^-)| = {worst:.2e} (tol 1e-9)"


def quartic_margin():
    margin = min(rho_prime(m) - lemma22_bound(m) for m in _even_range())
    return margin > 0, f"min rho'(m) - (1+sqrt(4m-5))/2 = {margin:.3e} (> 0)"


def f_prime_monotone(ms=(12, 20, 38, 60)):
    checked, bad = 0, []
    for m in ms:
        base = spectral_radius(make_f_prime(m, 1)).rho
        for l in range(3, m, 2):
            if (m - l) % 2 == 0 or not m > l + 1 or m - l < 3:
                continue
            rho = spectral_radius(make_f_prime(m, l)).rho
            checked += 1
            if not rho < base:
                bad.append((m, l))
    return not bad and checked > 0, f"{checked} (m, l) pairs, violations {bad}"


def odd_formula():
    worst = max(abs(spectral_radius(make_s((m + 3) // 2)).rho - odd_bound(m))
                for m in range(5, 100, 2))
    return worst <= 1e-10, f"max deviation {worst:.2e} (tol 1e-10)"


def desk_extremal(ms=(9, 10, 11, 12), workers=1):
    forbidden = (named_pattern("h33"), named_pattern("h43"))
    parts, ok = [], True
    for m in ms:
        res = extremal_search(m, forbidden, workers=workers, names=("h33", "h43"))
        target = make_s((m + 3) // 2) if m % 2 else make_s_minus((m + 4) // 2)
        iso = canonical_form(res.graph) == canonical_form(target)
        ok &= iso and res.unique
        parts.append(f"m={m}: {res.count} classes, rho={res.rho:.9f}, iso={iso}, unique={res.unique}")
    return ok, "; ".join(parts)


def random_graph(rng: random.Random, n_max: int = 16) -> Graph:
    n = rng.randint(1, n_max)
    p = rng.random()
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_edges(n, edges)


def detector_equivalence(samples=100_000, seed=7):
    import networkx as nx

    h43 = make_h(4, 3)
    mismatches = 0
    atlas = 0
    for gx in nx.graph_atlas_g()[1:]:
        g = from_edges(gx.number_of_nodes(), gx.edges())
        atlas += 1
        mismatches += is_h43_free(g) != (contains_subgraph(g, h43) is None)
    rng = random.Random(seed)
    for _ in range(samples):
        g = random_graph(rng)
        mismatches += is_h43_free(g) != (contains_subgraph(g, h43) is None)
    return mismatches == 0, f"{atlas} atlas classes (n <= 7) + {samples} random graphs, mismatches {mismatches}"


def catalog_oracle(n_max=7):
    from .families import make_complete, make_cycle, make_path, make_star

    forms = set(catalog_p2p3_free(n_max))
    required = {"P4": make_path(4), "C3": make_cycle(3), "K4-e": make_complete(4).remove_edge(2, 3),
                "K4": make_complete(4)}
    for t in range(1, n_max):
        required[f"K1,{t}"] = make_star(t)
    missing = [k for k, g in required.items() if canonical_form(g) not in forms]
    from .graph import parse_graph6

    worst = max(parse_graph6(f.decode()).m - parse_graph6(f.decode()).n for f in forms)
    return not missing and worst <= 2, f"{len(forms)} members, missing {missing}, max e-n = {worst}"


def audit_fixtures():
    bad = [m for m in range(38, 61, 2) if not audit_s_minus(m)[1]]
    return not bad, f"m = 38..60 even, failing {bad}"


def hill_climb_sanity(restarts=50, seed=20240601):
    t38 = hill_climb(SearchConfig(38, (named_pattern("h43"),), restarts=restarts, rng_seed=seed))
    t9 = hill_climb(SearchConfig(9, (named_pattern("h33"), named_pattern("h43")),
                                 restarts=restarts, rng_seed=seed))
    gap38 = abs(t38.best_rho - rho_prime(38))
    gap9 = abs(t9.best_rho - odd_bound(9))
    problems = check_trace(t38) + check_trace(t9)
    ok = gap38 <= 1e-6 and gap9 <= 1e-6 and not problems
    return ok, (f"m=38 gap {gap38:.1e} hit-rate {t38.hit_rate(rho_prime(38)):.2f}; "
                f"m=9 gap {gap9:.1e} hit-rate {t9.hit_rate(odd_bound(9)):.2f}; "
                f"trace problems {len(problems)}")


def rotation_instances(count=1000, seed=11):
    """Rotations G - wv + wu with N(u) strictly growing and x_u >= x_v."""
    from .search import random_hfree_graph

    rng = random.Random(seed)
    done = failures = 0
    smallest = math.inf
    while done < count:
        g = random_hfree_graph(rng.randint(3, 30), (), rng)
        res = spectral_radius(g)
        x = res.perron
        u = rng.randrange(g.n)
        ws = [w for w in range(g.n) if w != u and not g.has_edge(u, w)]
        if not ws:
            continue
        w = rng.choice(ws)
        vs = [v for v in g.neighbors(w) if x[u] >= x[v]]
        if not vs:
            continue
        v = rng.choice(vs)
        g2 = g.remove_edge(w, v).add_edge(w, u)
        quad = lambda h: sum(2 * x[a] * x[b] for a, b in h.edges())
        if quad(g2) < quad(g) or not (g.adj[u] & ~g2.adj[u] == 0 and g2.adj[u] != g.adj[u]):
            continue
        gain = spectral_radius(g2).rho - res.rho
        smallest = min(smallest, gain)
        failures += not gain > 0
        done += 1
    return failures == 0, f"{done} instances, failures {failures}, smallest gain {smallest:.3e}"


def run_suite(quick: bool = False, workers: int = 1, seed: int = 20240601, report=print):
    """Run every criterion; returns the list of results."""
    plan = [
        (1, "quartic-construction agreement", quartic_agreement, {}),
        (2, "quartic margin", quartic_margin, {}),
        (3, "F' monotonicity", f_prime_monotone, {}),
        (4, "odd-case exact formula", odd_formula, {}),
        (5, "desk-scale extremal search", desk_extremal,
         {"ms": (9, 10) if quick else (9, 10, 11, 12), "workers": workers}),
        (6, "detector equivalence", detector_equivalence, {"samples": 10_000 if quick else 100_000}),
        (7, "catalog oracle", catalog_oracle, {}),
        (8, "audit fixtures", audit_fixtures, {}),
        (9, "hill-climber sanity", hill_climb_sanity, {"seed": seed}),
        (10, "rotation property", rotation_instances, {"count": 1000}),
    ]
    results = []
    for number, name, fn, kw in plan:
        res = _timed(number, name, fn, **kw)
        if report:
            report(res.line())
        results.append(res)
    return results
