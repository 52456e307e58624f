"""
Decoration maps into weighted complexes
=======================================

"""

from gcx.comparison import G_decorate, compare_cohomology, verify_chain_map
from gcx.families import basis

# every way of putting weights on a graph, all-zero excluded
g = basis("ogc", 3, 1, 2)[0]
for term, c in G_decorate(g, "quasi", 2).items():
    print(c, term.encode())

# d G = G d holds exactly in the truncated target
for m in ("G_ogc_to_owqgc", "G_dgct_to_wqgc_plus", "G_ogc_to_owpgc"):
    rep = verify_chain_map(m, 3, 1, range(1, 5), 4)
    print(m, rep.passed, rep.as_dict()["terms"], "terms")

# cohomology on both sides, per truncation; only cells that stop moving count
rep = compare_cohomology("G_dgct_to_wqgc_plus", 3, 1, range(-2, 2), [3, 4, 5])
for c in rep.cells:
    print(c.degree, c.left_dim, c.right_dims_by_W, c.stabilized, c.match)
