"""
Bi-weighted graphs at loop order zero
=====================================

"""

from gcx.cohomology import cohomology_dims
from gcx.weighted import apply_w, basis_w, rescaling_class, vertex, differential_w

# single vertices allowed by each flavor at total weight 3
for flavor in ("normal", "quasi", "pseudo"):
    print(flavor, [g.weights for g in basis_w(f"{flavor}:b0", 2, 0, 1, 3)])

# the differential of a single vertex splits it and grows univalent leaves
print(differential_w("normal:b0", 2, 4, vertex(1, 2)))

# the rescaling class sum (i+j-2) v_ij is a cocycle in every truncation
r = rescaling_class("quasi", 5)
print(r)
print("d(rescaling) =", apply_w("quasi:b0", 2, 5, r))

# degree 0 is two dimensional: sum (i-1) v_ij and sum (j-1) v_ij both close
for W in (3, 4, 5, 6):
    t = cohomology_dims("normal:b0", 2, 0, v_range=range(1, max(1, W - 2) + 1), W=W)
    print(W, {d: t.h(d) for d in t.complete_degrees()})
