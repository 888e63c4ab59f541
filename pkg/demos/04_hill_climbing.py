"""
Hill climbing at m = 38
=======================

Exhaustive search stops around 14 edges.  Beyond that, a local search moves
one edge at a time and keeps a move only if the graph stays H(4,3)-free, the
current Perron vector does not lose Rayleigh quotient, and the spectral
radius goes up.  With 50 restarts it finds rho'(38).
"""
from collections import Counter

from hfree import SearchConfig, hill_climb, named_pattern, rho_prime
from hfree.graph import parse_graph6
from hfree.search import check_trace

cfg = SearchConfig(38, (named_pattern("h43"),), restarts=50)
trace = hill_climb(cfg)

target = rho_prime(38)
print("best rho %.12f, target %.12f, gap %.1e" % (trace.best_rho, target, abs(trace.best_rho - target)))
print("hit rate", trace.hit_rate(target))
print("trace problems:", check_trace(trace))

# where the restarts got stuck
ends = Counter()
for r in trace.restarts:
    g = parse_graph6(r.final_graph6)
    ends[(round(r.final_rho, 4), g.n, sorted(g.degrees())[-1])] += 1
for (rho, n, dmax), k in sorted(ends.items(), reverse=True)[:10]:
    print("%2d restarts ended at rho=%.4f  (n=%d, max degree %d)" % (k, rho, n, dmax))
