"""
Directed graphs, orientation signs and canonical forms
======================================================

"""

from gcx.graph import DirectedMultigraph, Parity, automorphisms, canonicalize, classify_vertex

# a double arrow x => y, stored as a vertex count and an edge list
double = DirectedMultigraph(2, ((0, 1), (0, 1)))
print(double.encode())
print(classify_vertex(double, 0), classify_vertex(double, 1))

# for odd k the orientation is an order on vertices, so swapping the two
# parallel edges does nothing and the graph survives
print("odd k:", canonicalize(double, Parity.VERTEX))

# for even k edges are ordered; the edge swap is an odd automorphism
print("even k:", canonicalize(double, Parity.EDGE))

# relabeling changes the sign by the parity of the permutation (odd k)
triangle = DirectedMultigraph(3, ((0, 1), (0, 2), (1, 2)))
for perm in [(0, 1, 2), (1, 0, 2), (1, 2, 0)]:
    gen, sign = canonicalize(triangle.relabel(perm), Parity.VERTEX)
    print(perm, gen.encode(), sign)

print("automorphisms of the theta graph:", automorphisms(DirectedMultigraph(2, ((0, 1), (0, 1), (0, 1)))))
