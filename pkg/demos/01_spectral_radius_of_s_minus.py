"""
The even-size extremal graph and its quartic
============================================

S^-_{n,2} is K2 joined to n-2 independent vertices, with one spoke removed.
Its size is 2n-4, and its spectral radius is the largest root of

    x^4 - m x^2 - (m-2) x + m/2 - 1.

This script builds the graph, runs power iteration on it and compares the
result with the root of the quartic.
"""
import numpy as np

from hfree import make_s_minus, rho_prime, spectral_radius
from hfree.spectral import lemma22_bound, odd_bound

m = 38
g = make_s_minus((m + 4) // 2)
print("order", g.n, "size", g.m)
print("degrees", sorted(g.degrees(), reverse=True)[:4], "...")

res = spectral_radius(g)
print("power iteration: rho = %.15f after %d iterations (residual %.1e)"
      % (res.rho, res.iterations, res.residual))
print("quartic root:    rho'= %.15f" % rho_prime(m))

# the same root from numpy's companion-matrix solver
roots = np.roots([1, 0, -m, -(m - 2), m / 2 - 1])
print("np.roots:        %.15f" % max(roots.real))

# the hub and its partner carry most of the Perron weight
x = res.perron
print("Perron vector, first four coordinates:", np.round(x[:4], 6))
print("pendant vertex coordinate:", round(x[-1], 6))

# rho' sits strictly between the two size-only bounds
for m in (6, 10, 38, 100, 200):
    print("m=%3d  %.6f < %.6f < %.6f" % (m, lemma22_bound(m), rho_prime(m), odd_bound(m)))
