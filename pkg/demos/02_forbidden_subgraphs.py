"""
Detecting H(4,3)
================

H(4,3) is a 4-cycle and a triangle sharing one vertex.  The fan F5 (a vertex
joined to a path on five vertices) contains it.  The book-like graphs S and
S^- do not, even though they are full of triangles and 4-cycles: every
triangle there uses the spine edge, so it meets every 4-cycle through the hub
in a second vertex.
"""
from hfree import contains_subgraph, is_h43_free, make_fan, make_h, make_s, make_s_minus
from hfree.subgraph import catalog_p2p3_free
from hfree.graph import parse_graph6

h43 = make_h(4, 3)
print("H(4,3) edges:", h43.edges())

f5 = make_fan(5)
w = contains_subgraph(f5, h43)
print("F5 contains H(4,3):", w is not None, "witness", w)

for g, name in [(make_s(12), "S_{12,2}"), (make_s_minus(21), "S^-_{21,2}")]:
    print(name, "is H(4,3)-free:", is_h43_free(g))

# Connected graphs with no P2 + P3 subgraph, the shapes allowed for the
# neighbourhood of the hub in an extremal graph
forms = catalog_p2p3_free(7)
print(len(forms), "connected (P2 u P3)-free graphs on at most 7 vertices:")
for f in forms:
    g = parse_graph6(f.decode())
    print("  %-6s n=%d m=%d degrees=%s" % (f.decode(), g.n, g.m, sorted(g.degrees(), reverse=True)))
