"""Spectral radius, Perron vectors, characteristic polynomials and bound functions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, _bits, components


class ConvergenceError(RuntimeError):
    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    residual: float
    iterations: int
    multi_component: bool = False


def _power_iteration(a: np.ndarray, tol: float, max_iter: int):
    # Iterating on A + I keeps the Perron value strictly dominant for bipartite graphs.
    n = a.shape[0]
    x = np.ones(n)
    rho = 0.0
    residual = math.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        y = ax + x
        x = y / y.max()
        ax = a @ x
        rho = float(x @ ax) / float(x @ x)
        residual = float(np.abs(ax - rho * x).max())
        if residual <= tol * max(1.0, rho):
            return rho, x, residual, it
    return rho, x, residual, max_iter


def spectral_radius(g: Graph, tol: float = 1e-12, max_iter: int | None = None) -> SpectralResult:
    """Largest adjacency eigenvalue with a max-normalised Perron vector.

    For disconnected input the value is the maximum over components and the
    vector is zero off the winning component.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    comps = components(g)
    if max_iter is None:
        max_iter = max(1000, 100 * g.n * g.n)
    best = None
    total_iter = 0
    for comp in comps:
        verts = list(_bits(comp))
        if len(verts) == 1:
            cand = (0.0, np.ones(1), 0.0, 0, verts)
        else:
            sub = g.induced(verts)
            rho, x, res, it = _power_iteration(sub.adjacency_matrix(), tol, max_iter)
            if res > tol * max(1.0, rho):
                perron = np.zeros(g.n)
                perron[verts] = x
                raise ConvergenceError(
                    f"power iteration stalled at residual {res:.3e}",
                    SpectralResult(rho, perron, res, it, len(comps) > 1),
                )
            cand = (rho, x, res, it, verts)
        total_iter += cand[3]
        if best is None or cand[0] > best[0] + 1e-14:
            best = cand
    rho, x, res, _, verts = best
    perron = np.zeros(g.n)
    perron[verts] = x
    return SpectralResult(rho, perron, res, total_iter, len(comps) > 1)


def rayleigh_quotient(g: Graph, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"vector length {x.shape} does not match order {g.n}")
    xx = float(x @ x)
    if xx == 0:
        raise ValueError("zero vector")
    quad = 0.0
    for u, v in g.edges():
        quad += 2.0 * x[u] * x[v]
    return quad / xx


def char_poly(g: Graph) -> list[int]:
    """Coefficients of det(xI - A), highest degree first, exact integers.

    Faddeev-LeVerrier recurrence; every division is exact over the integers.
    """
    n = g.n
    if n > 24:
        raise ValueError("char_poly supports n <= 24")
    a = [[1 if g.adj[i] >> j & 1 else 0 for j in range(n)] for i in range(n)]
    coeffs = [1]
    m_prev = [[0] * n for _ in range(n)]
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        mk = [[0] * n for _ in range(n)]
        for i in range(n):
            row = a[i]
            nbrs = [j for j in range(n) if row[j]]
            out = mk[i]
            for j in nbrs:
                src = m_prev[j]
                for c in range(n):
                    out[c] += src[c]
            out[i] += c_prev
        tr = 0
        for i in range(n):
            row = a[i]
            tr += sum(mk[j][i] for j in range(n) if row[j])
        if tr % k:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        c_prev = -tr // k
        coeffs.append(c_prev)
        m_prev = mk
    return coeffs


def poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def quartic(m: int, x: float) -> float:
    return x**4 - m * x**2 - (m - 2) * x + m / 2 - 1


def rho_prime(m: int) -> float:
    """Largest root of x^4 - m x^2 - (m-2) x + m/2 - 1."""
    if m % 2 or m < 6:
        raise ValueError(f"rho_prime needs even m >= 6, got {m}")
    lo, hi = 1.0, float(m)
    if not (quartic(m, lo) < 0 < quartic(m, hi)):
        lo, hi = 0.0, float(m + 2)
        if not (quartic(m, lo) * quartic(m, hi) < 0):
            raise ArithmeticError("no sign change bracketing the largest root")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if quartic(m, mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    x = 0.5 * (lo + hi)
    for _ in range(5):
        q = quartic(m, x)
        if abs(q) <= 1e-12 * m * m:
            break
        dq = 4 * x**3 - 2 * m * x - (m - 2)
        step = x - q / dq
        if not lo <= step <= hi:
            break
        x = step
    return x


def odd_bound(m: int) -> float:
    """(1 + sqrt(4m - 3)) / 2."""
    if m < 1:
        raise ValueError("m must be positive")
    return (1 + math.sqrt(4 * m - 3)) / 2


def lemma22_bound(m: int) -> float:
    """(1 + sqrt(4m - 5)) / 2, the strict lower bound on rho(S^-) for m >= 6."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return (1 + math.sqrt(4 * m - 5)) / 2


def size_bound(m: int) -> float | None:
    """Extremal value by parity: odd_bound for odd m, rho_prime for even m >= 6."""
    if m % 2:
        return odd_bound(m)
    if m >= 6:
        return rho_prime(m)
    return None
