"""
The decomposition around the Perron hub
=======================================

Let u* be the vertex with the largest Perron coordinate, N its
neighbourhood and W the remaining vertices.  The audit counts edges across
this split, checks the eigenvector identities at u*, evaluates the bounds
that follow from them, and tests the structural predicates that pin down
the extremal graph.
"""
from hfree import audit, make_s_minus
from hfree.audit import decompose
from hfree.families import make_cycle

g = make_s_minus(21)
d = decompose(g)
print("u* =", d.u_star, " |N| =", len(d.N), " |A+| =", len(d.A_plus), " |W| =", len(d.W))

for e in audit(g).entries:
    slack = "" if e.slack is None else "slack %+.3e" % e.slack
    print("%-15s %-26s %s" % (e.status, e.name, slack))

# the 5-cycle is not extremal, and the hub's neighbourhood is independent
print()
rep = audit(make_cycle(5))
print("C5:", {e.name: e.status for e in rep.entries if e.name.startswith(("A_plus", "edge", "walk"))})
