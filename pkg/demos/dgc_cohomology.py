"""
Cohomology of directed graph complexes
======================================

"""

from gcx.cohomology import cohomology_dims
from gcx.families import basis, closure_report

# the dgc basis at k=3, one loop, two vertices: just the double arrow
print([g.encode() for g in basis("dgc", 3, 1, 2)])

# d squares to zero and the families close up
print("closure dgc k=2 b=2:", closure_report("dgc", 2, 2, range(1, 6)).passed)

# three loops, k=2: a single class, in degree 0
t = cohomology_dims("dgc", 2, 3, v_range=range(1, 7))
for cell in t.cells:
    print(cell.degree, cell.dim, cell.cohomology)

# oriented graphs one step up in k have the same numbers
o = cohomology_dims("ogc", 3, 3, v_range=range(4, 8))
print({d: o.h(d) for d in o.complete_degrees()})
