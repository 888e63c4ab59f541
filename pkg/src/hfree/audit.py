"""Vertex decomposition around the Perron hub and a numeric ledger of the extremal-graph identities.

For a connected graph with Perron vector x and hub u* (largest coordinate)
the vertex set splits as {u*} + N + W with N = N(u*) and W the rest; N
splits into A+ (vertices with a neighbour inside N) and A0.  Every check
returns an :class:`AuditEntry`; inequalities report ``slack = rhs - lhs``.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .families import FamilyError, make_f_prime, make_s_minus
from .graph import Graph, _bits, canonical_form, components, is_connected
from .spectral import SpectralResult, lemma22_bound, spectral_radius
from .subgraph import in_p2p3_catalog, is_h43_free, is_p2p3_free

PASS, FAIL, NA = "PASS", "FAIL", "NOT-APPLICABLE"
TIE = 1e-10
STALE_RESIDUAL = 1e-10


class AuditError(ValueError):
    pass


@dataclass
class Decomposition:
    u_star: int
    N: list[int]
    A_plus: list[int]
    A_zero: list[int]
    W: list[int]
    e_A_plus: int
    e_N_W: int
    e_W: int
    e_A_plus_W: int
    rho: float
    perron: np.ndarray
    residual: float
    masks: dict = field(repr=False, default_factory=dict)


@dataclass
class AuditEntry:
    name: str
    status: str
    lhs: float | None = None
    rhs: float | None = None
    slack: float | None = None
    note: str = ""


@dataclass
class AuditReport:
    graph6: str
    m: int
    entries: list[AuditEntry]

    def __getitem__(self, name: str) -> AuditEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def status(self, name: str) -> str:
        return self[name].status

    def failures(self, names=None) -> list[AuditEntry]:
        return [e for e in self.entries if e.status == FAIL and (names is None or e.name in names)]

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "m": self.m, "entries": [asdict(e) for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _mask(vs) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def decompose(g: Graph, spec: SpectralResult | None = None) -> Decomposition:
    """Split V(G) around the lowest-index vertex of maximum Perron coordinate."""
    if not is_connected(g):
        raise AuditError("decompose needs a connected graph")
    if g.m == 0:
        raise AuditError("decompose needs at least one edge")
    spec = spectral_radius(g) if spec is None else spec
    x = spec.perron
    top = float(x.max())
    u = int(np.flatnonzero(x >= top - TIE * max(1.0, top))[0])
    n_mask = g.adj[u]
    a_plus = [v for v in _bits(n_mask) if g.adj[v] & n_mask]
    a_zero = [v for v in _bits(n_mask) if not g.adj[v] & n_mask]
    w_mask = ((1 << g.n) - 1) & ~n_mask & ~(1 << u)
    ap_mask = _mask(a_plus)
    return Decomposition(
        u_star=u,
        N=list(_bits(n_mask)),
        A_plus=a_plus,
        A_zero=a_zero,
        W=list(_bits(w_mask)),
        e_A_plus=g.edges_within(ap_mask),
        e_N_W=g.edges_between(n_mask, w_mask),
        e_W=g.edges_within(w_mask),
        e_A_plus_W=g.edges_between(ap_mask, w_mask),
        rho=spec.rho,
        perron=x,
        residual=spec.residual,
        masks={"N": n_mask, "A_plus": ap_mask, "A_zero": _mask(a_zero), "W": w_mask},
    )


def _tol(rho: float) -> float:
    return 1e-8 * max(1.0, rho * rho)


def _ineq(name, lhs, rhs, rho, note="") -> AuditEntry:
    slack = rhs - lhs
    return AuditEntry(name, PASS if slack >= -_tol(rho) else FAIL, lhs, rhs, slack, note)


def _ident(name, lhs, rhs, rho, note="") -> AuditEntry:
    diff = abs(lhs - rhs)
    return AuditEntry(name, PASS if diff <= _tol(rho) else FAIL, lhs, rhs, -diff, note)


def _pred(name, ok: bool, note="") -> AuditEntry:
    return AuditEntry(name, PASS if ok else FAIL, note=note)


def check_edge_count(g: Graph, d: Decomposition) -> list[AuditEntry]:
    rhs = len(d.N) + d.e_A_plus + d.e_N_W + d.e_W
    return [AuditEntry("edge_count_identity", PASS if g.m == rhs else FAIL, g.m, rhs, rhs - g.m,
                       "m = |N| + e(A+) + e(N,W) + e(W)")]


def check_eigen_identities(g: Graph, d: Decomposition) -> list[AuditEntry]:
    if d.residual > STALE_RESIDUAL:
        raise AuditError(f"Perron residual {d.residual:.2e} too large for the identities")
    x, u, rho = d.perron, d.u_star, d.rho
    n_mask = d.masks["N"]
    first = _ident("eigen_row_identity", rho * x[u], float(sum(x[v] for v in d.N)), rho,
                   "rho x_u* = sum over N of x_v")
    second_rhs = (
        len(d.N) * x[u]
        + sum(bin(g.adj[v] & n_mask).count("1") * x[v] for v in d.A_plus)
        + sum(bin(g.adj[w] & n_mask).count("1") * x[w] for w in d.W)
    )
    second = _ident("eigen_square_identity", rho * rho * x[u], float(second_rhs), rho,
                    "rho^2 x_u* = |N| x_u* + sum_A+ d_N x + sum_W d_N x")
    return [first, second]


def _a0_ratio(d: Decomposition) -> float:
    x = d.perron
    return float(sum(x[v] for v in d.A_zero) / x[d.u_star])


def check_inequality_ledger(g: Graph, d: Decomposition) -> list[AuditEntry]:
    rho, m = d.rho, g.m
    a = len(d.A_plus)
    s = _a0_ratio(d)
    out = [
        _ineq("walk_bound", rho * rho - rho, len(d.N) + 2 * d.e_A_plus - a + d.e_N_W - s, rho,
              "rho^2 - rho <= |N| + 2e(A+) - |A+| + e(N,W) - sum_A0 x/x_u*"),
    ]
    premise = m >= 2 and rho > lemma22_bound(m)
    out.append(AuditEntry("premise_rho_above_bound", PASS if premise else FAIL,
                          lemma22_bound(m) if m >= 2 else None, rho,
                          rho - lemma22_bound(m) if m >= 2 else None,
                          note="observation: the later bounds are derived under this premise"))
    gap = d.e_A_plus - a + 1.5 - d.e_W
    if premise:
        out.append(_ineq("w_edge_bound", d.e_W, d.e_A_plus - a + 1.5 - s, rho,
                         "0 <= e(W) < e(A+) - |A+| + 3/2 - sum_A0 x/x_u*"))
        x_u = d.perron[d.u_star]
        out.append(_ineq("a_zero_mass_bound", s * x_u, gap * x_u, rho,
                         "0 <= sum_A0 x_v < [e(A+) - |A+| + 3/2 - e(W)] x_u*"))
        out.append(_ineq("hub_quadratic_bound", rho * rho - rho * gap, 2 * d.e_A_plus + a + d.e_A_plus_W, rho,
                         "rho^2 - rho[e(A+) - |A+| + 3/2 - e(W)] < 2e(A+) + |A+| + e(A+,W)"))
    else:
        for name in ("w_edge_bound", "a_zero_mass_bound", "hub_quadratic_bound"):
            out.append(AuditEntry(name, NA, note="premise rho > (1+sqrt(4m-5))/2 fails"))
    star = _star_size(g, d)
    if premise and star is not None and d.e_W == 0:
        out.append(_ineq("star_case_bound", rho * rho - rho / 2, 3 * star + 1 + d.e_A_plus_W, rho,
                         "G[A+] = K_{1,t}, e(W) = 0: rho^2 - rho/2 < 3t + 1 + e(A+,W)"))
    else:
        out.append(AuditEntry("star_case_bound", NA, note="needs the premise, G[A+] a star and e(W) = 0"))
    out.append(AuditEntry("excluded_case_bounds", NA,
                          note="numeric bounds for configurations that cannot occur in a maximiser"))
    return out


def _star_size(g: Graph, d: Decomposition) -> int | None:
    """t if G[A+] is K_{1,t}, else None."""
    if not d.A_plus:
        return None
    h = g.induced(d.A_plus)
    degs = sorted(h.degrees(), reverse=True)
    t = h.n - 1
    if h.m == t and degs[0] == t and all(x == 1 for x in degs[1:]):
        return t
    return None


def _f_prime_match(g: Graph) -> int | None:
    """l such that G is isomorphic to F'_{m,l}, if any (the order forces l = 2n - m - 3)."""
    l = 2 * g.n - g.m - 3
    try:
        cand = make_f_prime(g.m, l)
    except (FamilyError, ValueError):
        return None
    return l if canonical_form(cand) == canonical_form(g) else None


def _item_checks(g: Graph, d: Decomposition, context: bool, min_deg_w: bool) -> list[AuditEntry]:
    adj = g.adj
    ap, a0, w_mask = d.masks["A_plus"], d.masks["A_zero"], d.masks["W"]
    names = ["item_i", "item_ii", "item_iii", "item_iv", "item_v"]
    if not context:
        return [AuditEntry(n, NA, note="needs H(4,3)-free G with G[A+] a non-star catalog member")
                for n in names]
    cnt = lambda x: bin(x).count("1")
    bad = {n: [] for n in names}
    for w in d.W:
        if cnt(adj[w] & a0) > 1:
            bad["item_i"].append(w)
        if cnt(adj[w] & a0) >= 1 and cnt(adj[w] & ap):
            bad["item_ii"].append(w)
        if not adj[w] & w_mask and (adj[w] & a0 or cnt(adj[w]) < 2 or adj[w] & ~ap):
            bad["item_iii"].append(w)
    w_edges = [(a, b) for a in d.W for b in _bits(adj[a] & w_mask) if a < b]
    ap_edges = [(a, b) for a in d.A_plus for b in _bits(adj[a] & ap) if a < b]
    for w1, w2 in w_edges:
        pair = (1 << w1) | (1 << w2)
        for v in d.A_plus:
            if cnt(adj[v] & pair) > 1:
                bad["item_iv"].append((w1, w2, v))
        for v1, v2 in ap_edges:
            vp = (1 << v1) | (1 << v2)
            if not any(adj[x] & vp == 0 for x in (w1, w2)) and not any(adj[x] & pair == 0 for x in (v1, v2)):
                bad["item_v"].append((w1, w2, v1, v2))
    out = []
    for n in names:
        if n == "item_iii" and not min_deg_w:
            out.append(AuditEntry(n, NA, note="needs d(w) >= 2 on W"))
        else:
            out.append(_pred(n, not bad[n], f"violations: {bad[n][:5]}" if bad[n] else ""))
    return out


def check_claims(g: Graph, d: Decomposition) -> list[AuditEntry]:
    """Structural predicates; observations for arbitrary graphs."""
    out = [_pred("A_plus_nonempty", bool(d.A_plus))]
    if d.A_plus:
        h = g.induced(d.A_plus)
        connected = len(components(h)) == 1
        out.append(_pred("A_plus_connected", connected))
        out.append(_pred("A_plus_p2p3_free", is_p2p3_free(h)))
        in_cat = connected and h.m > 0 and in_p2p3_catalog(h)
        out.append(_pred("A_plus_in_catalog", in_cat))
        star = _star_size(g, d)
        out.append(_pred("A_plus_is_star", star is not None,
                         f"t = {star}" if star is not None else ""))
        if star is not None:
            out.append(_pred("star_implies_W_empty", not d.W))
        else:
            out.append(AuditEntry("star_implies_W_empty", NA, note="G[A+] is not a star"))
    else:
        in_cat = False
        star = None
        for name in ("A_plus_connected", "A_plus_p2p3_free", "A_plus_in_catalog",
                     "A_plus_is_star", "star_implies_W_empty"):
            out.append(AuditEntry(name, NA, note="A+ is empty"))
    min_deg_w = all(g.degree(w) >= 2 for w in d.W)
    out.append(_pred("W_min_degree_two", min_deg_w))
    l = _f_prime_match(g)
    out.append(_pred("final_F_prime", l is not None, f"l = {l}" if l is not None else ""))
    context = in_cat and star is None and is_h43_free(g)
    out.extend(_item_checks(g, d, context, min_deg_w))
    return out


def audit(g: Graph) -> AuditReport:
    from .graph import write_graph6

    d = decompose(g)
    entries = (check_edge_count(g, d) + check_eigen_identities(g, d)
               + check_inequality_ledger(g, d) + check_claims(g, d))
    return AuditReport(write_graph6(g), g.m, entries)


FIXTURE_GATE = (
    "edge_count_identity", "eigen_row_identity", "eigen_square_identity", "walk_bound", "w_edge_bound", "a_zero_mass_bound", "hub_quadratic_bound",
    "A_plus_nonempty", "A_plus_connected", "A_plus_in_catalog",
    "star_implies_W_empty", "W_min_degree_two", "final_F_prime",
)


def audit_s_minus(m: int) -> tuple[AuditReport, bool]:
    """Audit the even-size extremal candidate; the bool says every gated entry passed
    and the graph matches F'_{m,1}."""
    if m % 2:
        raise AuditError("the S^- fixture needs even m")
    g = make_s_minus((m + 4) // 2)
    rep = audit(g)
    ok = all(rep.status(n) == PASS for n in FIXTURE_GATE) and _f_prime_match(g) == 1
    return rep, ok
