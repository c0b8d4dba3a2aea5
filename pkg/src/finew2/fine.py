"""
Fine interiors of lattice polygons and of width-2 middle polygons.

Throughout, a half-integral middle polygon ``P0`` is handled through the
lattice polygon ``R = 2 P0``.  In doubled coordinates the defining
inequalities of ``2 Fbar(P0)`` read ``<y, n> >= Min(R, n) + 2`` when
``Min(R, n)`` is even and ``>= Min(R, n) + 1`` when it is odd, for every
primitive ``n``.  Points of ``F(R)`` already satisfy the odd case, so a
lattice point ``z`` of ``F(R)`` drops out exactly when some primitive ``n``
with even ``Min(R, n)`` has ``<z, n> - Min(R, n) == 1`` -- a finite scan of
the polar region around ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    HalfPolygon,
    Polygon,
    RationalPolygon,
    convex_hull,
    dot,
    polar_scan,
)
from .polytope3 import Polytope3, fine_interior_3d


@dataclass(frozen=True)
class SupportSet:
    """Primitive ``n`` with ``Min(F(R), n) == Min(R, n) + 1``.

    ``even[i]`` is the parity flag of ``Min(R, normals[i])``; even means
    ``n`` belongs to ``N1(P0)`` for ``R = 2 P0``.
    """

    normals: tuple[tuple[int, int], ...]
    even: tuple[bool, ...]
    support: tuple[int, ...]

    def n1(self):
        return [n for n, e in zip(self.normals, self.even) if e]


def interior_hull(P: Polygon) -> Polygon:
    """``conv(int(P) ∩ M)``, the Fine interior of a lattice polygon."""
    if P.dim < 2:
        return Polygon.empty()
    pts = P.interior_lattice_points()
    return convex_hull(pts) if pts else Polygon.empty()


def move_out(P, k: int = 1) -> RationalPolygon:
    """
    ``{x : <x, n_E> >= Min(P, n_E) - k}`` over the edge normals of ``P``.

    For a HalfPolygon the result is in true (undoubled) coordinates.
    """
    if P.dim != 2:
        raise ValueError("degenerate")
    if isinstance(P, HalfPolygon):
        cons = [(n[0], n[1], Fraction(c - 2 * k, 2)) for n, c in P.doubled.edge_normals()]
    else:
        cons = [(n[0], n[1], c - k) for n, c in P.edge_normals()]
    return RationalPolygon(cons)


def max_half_polygon(Q: HalfPolygon) -> HalfPolygon:
    """``conv(Q^(-1) ∩ M/2)``, the largest middle polygon that can have ``Q`` as Fbar."""
    return move_out(Q).half_integral_hull()


class _Excluder:
    # caches the facet data of R for repeated exclusion tests
    __slots__ = ("R", "verts", "facets")

    def __init__(self, R: Polygon):
        self.R = R
        self.verts = R.vertices
        self.facets = R.edge_normals()

    def gap_one_normals(self, z):
        out = []
        for n in polar_scan(self.verts, self.facets, z, 1):
            m = min(dot(v, n) for v in self.verts)
            if dot(z, n) - m == 1:
                out.append((n, m))
        return out

    def excluded(self, z) -> bool:
        for n, m in self.gap_one_normals(z):
            if m % 2 == 0:
                return True
        return False


def excluded(z, R: Polygon) -> bool:
    """Whether the lattice point ``z`` of ``F(R)`` is cut from ``2 Fbar(R/2)``.

    True when some primitive ``n`` has even ``Min(R, n)`` and
    ``<z, n> == Min(R, n) + 1``, or when ``z`` is not interior to ``R``.
    """
    if not R.contains(z, strict=True):
        return True
    return _Excluder(R).excluded(tuple(z))


def fbar(P0: HalfPolygon) -> HalfPolygon:
    """
    ``Fbar(P0)`` as a HalfPolygon (possibly lower-dimensional or empty).

    When the result is 2-dimensional it is exact.  For lower-dimensional
    results this is the hull of the half-integral points of ``Fbar(P0)``.
    """
    R = P0.doubled
    G = interior_hull(R)
    if G.dim < 0:
        return HalfPolygon(Polygon.empty())
    ex = _Excluder(R)
    keep = [z for z in G.lattice_points() if not ex.excluded(z)]
    return HalfPolygon(Polygon(keep))


def support_normals(R: Polygon) -> SupportSet:
    """The support ``S_F(R)`` of the interior hull, tagged by parity of ``Min(R, n)``."""
    F = interior_hull(R)
    if F.dim < 0:
        raise ValueError("empty interior hull")
    ex = _Excluder(R)
    found = {}
    for x in F.vertices:
        for n, m in ex.gap_one_normals(x):
            if min(dot(v, n) for v in F.vertices) == m + 1:
                found[n] = m
    normals = tuple(sorted(found))
    return SupportSet(normals, tuple(found[n] % 2 == 0 for n in normals),
                      tuple(found[n] for n in normals))


def fbar_via_support(P0: HalfPolygon) -> HalfPolygon:
    """
    ``2 Fbar(P0)`` as the hull of two explicit lattice point sets of ``F = F(2 P0)``:
    the boundary points of ``F`` that are not at height one over ``2 P0`` for
    any support normal of even support value, and the points of ``F(F)``.
    """
    R = P0.doubled
    F = interior_hull(R)
    if F.dim < 0:
        return HalfPolygon(Polygon.empty())
    S = support_normals(R)
    tight = [(n, m) for n, m, e in zip(S.normals, S.support, S.even) if e]
    if F.dim == 2:
        inner = set(interior_hull(F).lattice_points())
        boundary = [p for p in F.lattice_points() if not F.contains(p, strict=True)]
    else:
        inner = set()
        boundary = F.lattice_points()
    keep = [x for x in boundary if all(dot(x, n) != m + 1 for n, m in tight)]
    return HalfPolygon(Polygon(keep + sorted(inner)))


def fine_interior_test(Q: HalfPolygon) -> bool:
    """``Q == Fbar(conv(Q^(-1) ∩ M/2))``: is ``Q`` the Fine interior of a lattice 3-polytope?"""
    if Q.dim != 2:
        return False
    P0 = max_half_polygon(Q)
    return _fbar_equals(P0, Q.doubled)


def _fbar_equals(P0: HalfPolygon, D: Polygon) -> bool:
    # fbar(P0).doubled == D without building the full point set when it fails
    R = P0.doubled
    ex = _Excluder(R)
    for v in D.vertices:
        if not R.contains(v, strict=True) or ex.excluded(v):
            return False
    G = interior_hull(R)
    for z in G.lattice_points():
        if not D.contains(z) and not ex.excluded(z):
            return False
    return True


def pyramid(P0: HalfPolygon) -> Polytope3:
    """``2 Pyr(P0) - (1, 0, 0) = conv((1, 0, 0), {-1} x 2 P0)``, whose middle polygon is ``P0``."""
    verts = [(1, 0, 0)] + [(-1, x, y) for x, y in P0.doubled.vertices]
    return Polytope3(verts)


def pyramid_oracle(P0: HalfPolygon) -> Polytope3:
    """Fine interior of the pyramid over ``P0``, computed directly in dimension 3."""
    if P0.dim != 2:
        raise ValueError("degenerate")
    return fine_interior_3d(pyramid(P0))


def embed_middle(F: HalfPolygon) -> Polytope3:
    """``{0} x F`` as a rational 3-polytope."""
    return Polytope3([(0, x, y) for x, y in F.doubled.vertices], denominator=2)


def inclusion_chain_check(P0: HalfPolygon) -> bool:
    """``F(F(2 P0)) ⊆ 2 Fbar(P0) ⊆ F(2 P0)`` (outer terms of the inclusion chain)."""
    R = P0.doubled
    G = interior_hull(R)
    GG = interior_hull(G) if G.dim == 2 else Polygon.empty()
    Fb = fbar(P0).doubled
    if not all(Fb.contains(p) for p in GG.vertices):
        return False
    return all(G.contains(p) for p in Fb.vertices)
