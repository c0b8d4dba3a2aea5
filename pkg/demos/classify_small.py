"""
The twelve Fine interiors with two lattice points, each split into its base
segment and hats, with the Chern numbers of the corresponding surface.
"""

from finew2 import chern, classify, hat_decomposition

for rec in classify(2):
    F = rec.fine_interior
    base, hats = hat_decomposition(F)
    inv = chern(F)
    heights = ", ".join(str(h.height) for h in hats)
    print(f"2F = {list(F.doubled.vertices)!s:<42} hats of height {heights:<9} "
          f"c1^2 = {inv.c1sq}, c2 = {inv.c2}")

print()
for g in (3, 4, 5):
    recs = classify(g)
    lattice = sum(r.fine_interior.is_lattice() for r in recs)
    print(f"g = {g}: {len(recs)} Fine interiors, {lattice} of them lattice polygons")
