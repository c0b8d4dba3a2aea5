"""
Rational 3-polytopes and a direct Fine interior computation.

This is the slow, independent path used to cross-check the planar
computations: ``F(P)`` is found by refining an outer approximation with
every primitive normal that can still cut one of its vertices.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .lattice import _hull, primitive

# int64 products stay exact below this entry size
_NP_SAFE = 1 << 18


def _to_numerators(points, denominator):
    den = 1
    fr = [tuple(Fraction(c) / denominator for c in p) for p in points]
    for p in fr:
        for c in p:
            den = lcm(den, c.denominator)
    return [tuple(int(c * den) for c in p) for p in fr], den


def _rank(vectors) -> int:
    rows = [list(map(Fraction, v)) for v in vectors if any(v)]
    rank = 0
    ncols = 3
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class Polytope3:
    """
    Convex hull of rational points in ``Q^3``.

    ``points`` are read as numerators over ``denominator`` (rational entries
    are fine too).  Internally everything is stored as integer numerators
    over one reduced common ``denominator``.
    ``vertices`` are the extreme points, sorted; equality compares them.
    """

    def __init__(self, points, denominator: int = 1):
        nums, den = _to_numerators(points, denominator)
        g = den
        for p in nums:
            for c in p:
                g = gcd(g, c)
        if g > 1:
            nums = [tuple(c // g for c in p) for p in nums]
            den //= g
        self.denominator = den
        self._points = sorted(set(nums))
        self._facets = None
        self._verts = None

    @classmethod
    def empty(cls) -> "Polytope3":
        return cls([])

    @property
    def dim(self) -> int:
        if not self._points:
            return -1
        o = self._points[0]
        return _rank([tuple(a - b for a, b in zip(p, o)) for p in self._points[1:]])

    def lattice_vertices(self):
        """Vertex numerators (the vertices themselves when ``denominator == 1``)."""
        if self._verts is None:
            self._verts = self._extreme_points()
        return self._verts

    @property
    def vertices(self) -> tuple:
        d = self.denominator
        return tuple(tuple(Fraction(c, d) for c in p) for p in self.lattice_vertices())

    def __eq__(self, other):
        return isinstance(other, Polytope3) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope3([{verts}])"

    def facets(self) -> list[tuple[tuple[int, int, int], int]]:
        """Primitive inner facet normals with ``Min`` over the numerators."""
        if self._facets is None:
            if self.dim != 3:
                raise ValueError("facets need a full-dimensional polytope")
            pts = self._points
            found = {}
            for a, b, c in itertools.combinations(pts, 3):
                u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
                w = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
                n = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
                if not any(n):
                    continue
                n = primitive(n)
                h = sum(x * y for x, y in zip(a, n))
                vals = [sum(x * y for x, y in zip(p, n)) for p in pts]
                if min(vals) == h:
                    found[n] = h
                elif max(vals) == h:
                    found[tuple(-x for x in n)] = -h
            self._facets = sorted(found.items())
        return self._facets

    def _extreme_points(self):
        pts = self._points
        d = self.dim
        if d <= 0:
            return list(pts)
        if d == 3:
            facets = self.facets()
            out = []
            for p in pts:
                tight = [n for n, h in facets if sum(x * y for x, y in zip(p, n)) == h]
                if _rank(tight) == 3:
                    out.append(p)
            return out
        # project to coordinates on which the affine hull is injective
        o = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, o)) for p in pts[1:]]
        for coords in itertools.combinations(range(3), d):
            sub = [tuple(v[i] for i in coords) for v in diffs]
            if _rank([s + (0,) * (3 - d) for s in sub]) == d:
                break
        proj = {tuple(p[i] for i in coords): p for p in pts}
        if d == 1:
            keys = sorted(proj)
            return sorted([proj[keys[0]], proj[keys[-1]]])
        return sorted(proj[k] for k in _hull(sorted(proj)))

    def contains(self, x) -> bool:
        xs = [Fraction(c) * self.denominator for c in x]
        return all(sum(a * b for a, b in zip(xs, n)) >= h for n, h in self.facets())


def _polar_scan3(verts, facets, z_num, z_den, slack):
    # primitive n with <z - v, n> <= slack for all v, z = z_num / z_den
    bounds = []
    for i in range(3):
        b = 0
        for m, c in facets:
            gap = Fraction(sum(a * b for a, b in zip(z_num, m)), z_den) - c
            if gap <= 0:
                raise ValueError("point not interior")
            b = max(b, int((slack * abs(m[i])) // gap))
        bounds.append(b)
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    V = np.array(verts, dtype=np.int64)
    diffs = np.asarray(z_num, dtype=np.int64)[None, :] - z_den * V
    ok = (grid @ diffs.T <= slack * z_den).all(axis=1)
    g = np.gcd.reduce(np.abs(grid), axis=1)
    ok &= g == 1
    return [tuple(int(c) for c in n) for n in grid[ok]]


def _halfspace_vertices(normals, rhs, chunk=20000):
    """Vertices of ``{x : normals @ x >= rhs}`` as Fraction triples."""
    A = np.array(normals, dtype=np.int64)
    r = np.array(rhs, dtype=np.int64)
    if np.abs(A).max(initial=0) >= _NP_SAFE or np.abs(r).max(initial=0) >= _NP_SAFE:
        raise OverflowError("coefficients too large for exact int64 enumeration")
    m = len(A)
    out = set()
    combos = itertools.combinations(range(m), 3)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        ai, aj, ak = A[block[:, 0]], A[block[:, 1]], A[block[:, 2]]
        cjk, cki, cij = np.cross(aj, ak), np.cross(ak, ai), np.cross(ai, aj)
        det = (ai * cjk).sum(axis=1)
        keep = det != 0
        if not keep.any():
            continue
        det, cjk, cki, cij = det[keep], cjk[keep], cki[keep], cij[keep]
        b = block[keep]
        num = r[b[:, 0], None] * cjk + r[b[:, 1], None] * cki + r[b[:, 2], None] * cij
        neg = det < 0
        det = np.where(neg, -det, det)
        num = np.where(neg[:, None], -num, num)
        feas = (A @ num.T >= r[:, None] * det[None, :]).all(axis=0)
        for n, d in zip(num[feas], det[feas]):
            out.add(tuple(Fraction(int(c), int(d)) for c in n))
    return out


def _dot(p, n):
    return p[0] * n[0] + p[1] * n[1] + p[2] * n[2]


def _clip(verts, masks, n, h, bit):
    """
    Cut ``conv(verts)`` with ``<x, n> >= h``.

    ``masks[i]`` has a bit per recorded constraint tight at ``verts[i]``.  Two
    vertices span an edge iff no third vertex is tight on every constraint
    they share.
    """
    vals = [_dot(v, n) - h for v in verts]
    if all(x >= 0 for x in vals):
        return verts, masks, False
    out = [(v, m | bit if x == 0 else m) for v, m, x in zip(verts, masks, vals) if x >= 0]
    hi = [i for i, x in enumerate(vals) if x > 0]
    lo = [i for i, x in enumerate(vals) if x < 0]
    for i in hi:
        for j in lo:
            common = masks[i] & masks[j]
            if any(k != i and k != j and masks[k] & common == common for k in range(len(verts))):
                continue
            t = vals[i] / (vals[i] - vals[j])
            u, w = verts[i], verts[j]
            out.append((tuple(a + t * (b - a) for a, b in zip(u, w)), common | bit))
    return [v for v, _ in out], [m for _, m in out], True


def fine_interior_3d(P: Polytope3, max_rounds: int = 50) -> Polytope3:
    """
    ``F(P)`` of a lattice 3-polytope by fixed-point refinement.

    Start from the facets moved in by one; then repeatedly clip with every
    primitive ``n`` (found in the polar region of ``P`` around each current
    vertex) that cuts a vertex.  When no vertex is cut by any normal the
    current polytope satisfies every defining inequality, hence equals
    ``F(P)``.
    """
    if P.denominator != 1 or P.dim != 3:
        raise ValueError("need a full-dimensional lattice 3-polytope")
    verts = P.lattice_vertices()
    facets = P.facets()
    cons = [(n, h + 1) for n, h in facets]
    seen = {n for n, _ in cons}
    S = sorted(_halfspace_vertices([n for n, _ in cons], [h for _, h in cons]))
    masks = [sum(1 << k for k, (n, h) in enumerate(cons) if _dot(s, n) == h) for s in S]
    for _ in range(max_rounds):
        if not S:
            return Polytope3.empty()
        new = {}
        for s in S:
            den = 1
            for c in s:
                den = lcm(den, c.denominator)
            s_num = tuple(int(c * den) for c in s)
            for n in _polar_scan3(verts, facets, s_num, den, 1):
                if n in seen or n in new:
                    continue
                h = min(_dot(v, n) for v in verts)
                if _dot(s_num, n) < (h + 1) * den:
                    new[n] = h + 1
        if not new:
            return Polytope3(S)
        for n, h in sorted(new.items()):
            seen.add(n)
            S, masks, cut = _clip(S, masks, n, h, 1 << len(cons))
            if cut:
                cons.append((n, h))
            if not S:
                return Polytope3.empty()
    raise RuntimeError("Fine interior refinement did not stabilize")
