"""
From a width-2 lattice 3-polytope to its Fine interior, two ways.

The pyramid over a half-integral polygon P0 (apex at x = 1, base at x = -1)
has lattice width 2.  Its Fine interior lies in the slice x = 0, and the
planar computation fbar(P0) predicts that slice without leaving the plane.
"""

from fractions import Fraction as Fr

from finew2 import (
    HalfPolygon,
    embed_middle,
    fbar,
    fine_interior_3d,
    fine_interior_test,
    lattice_width,
    max_half_polygon,
    pyramid,
)

P0 = HalfPolygon.from_points([(-2, -1), (3, -1), (Fr(1, 2), Fr(3, 2))])
P = pyramid(P0)
print("P0 (doubled vertices):", P0.doubled.vertices)
print("pyramid vertices:", [tuple(map(str, v)) for v in P.vertices])
print("lattice width of the pyramid:", lattice_width(P)[0])

F3 = fine_interior_3d(P)
F2 = fbar(P0)
print("Fine interior in 3D:", [tuple(map(str, v)) for v in F3.vertices])
print("planar prediction  :", [tuple(map(str, v)) for v in F2.vertices])
print("slices agree:", F3 == embed_middle(F2))

# Going back: the largest middle polygon with this Fine interior
print("F is a Fine interior:", fine_interior_test(F2))
print("max_half_polygon(F) == P0:", max_half_polygon(F2) == P0)

# A hat that is too tall is not a Fine interior of anything
tall = HalfPolygon.from_points([(0, 0), (1, 0), (Fr(1, 2), Fr(5, 2))])
print("height-5/2 hat is a Fine interior:", fine_interior_test(tall))
