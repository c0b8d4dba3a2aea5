"""
Exact lattice geometry in the plane.

Points of ``M = Z^2`` and dual vectors of ``N = Hom(M, Z)`` are plain integer
tuples.  Polygons are stored as counterclockwise vertex tuples starting at the
lexicographically smallest vertex, so structural equality is tuple equality.
Half-integral polygons are stored through their doubled lattice polygon.

Nothing in here uses floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

Point = tuple[int, int]
DualVector = tuple[int, int]


def cross(o, a, b):
    """Twice the signed area of the triangle ``o, a, b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(x, n):
    return x[0] * n[0] + x[1] * n[1]


def is_primitive(n: Sequence[int]) -> bool:
    g = 0
    for c in n:
        g = gcd(g, c)
    return g == 1


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(c // g for c in v)


def sign_normalized(n: Sequence[int]) -> tuple[int, ...]:
    """Return ``n`` or ``-n``, whichever has a positive first nonzero entry."""
    for c in n:
        if c:
            return tuple(n) if c > 0 else tuple(-d for d in n)
    return tuple(n)


def _ceil_div(a, b):
    return -((-a) // b)


def _hull(pts: list) -> tuple:
    # pts sorted and unique; collinear points are dropped
    if len(pts) <= 2:
        return tuple(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def _row_ranges(constraints, ylo, yhi, strict=False) -> Iterator[tuple[int, int, int]]:
    """Yield ``(y, xmin, xmax)`` for integer rows of ``{a x + b y >= c}``.

    ``c`` may be a Fraction; ``a`` and ``b`` are integers.  With ``strict``
    the inequalities are strict.
    """
    for y in range(ylo, yhi + 1):
        lo = None
        hi = None
        ok = True
        for a, b, c in constraints:
            r = c - b * y
            if a > 0:
                v = r // a + 1 if strict else _ceil_div(r, a)
                if lo is None or v > lo:
                    lo = v
            elif a < 0:
                v = _ceil_div(r, a) - 1 if strict else r // a
                if hi is None or v < hi:
                    hi = v
            elif (strict and r >= 0) or (not strict and r > 0):
                ok = False
                break
        if ok and lo is not None and hi is not None and lo <= hi:
            yield y, lo, hi


class Polygon:
    """
    Convex lattice polygon, possibly degenerate.

    ``Polygon(points)`` is the convex hull of ``points``.  The vertex tuple is
    counterclockwise, strictly convex and starts at the lexicographically
    smallest vertex.  Points (one vertex) and segments (two vertices) are
    valid values; the empty polygon has no vertices and dimension ``-1``.
    """

    __slots__ = ("vertices", "_normals")

    def __init__(self, points: Iterable[Sequence[int]] = ()):
        pts = sorted({(int(p[0]), int(p[1])) for p in points})
        self.vertices: tuple[Point, ...] = _hull(pts)
        self._normals = None

    @classmethod
    def _raw(cls, vertices: tuple) -> "Polygon":
        obj = object.__new__(cls)
        obj.vertices = vertices
        obj._normals = None
        return obj

    @classmethod
    def empty(cls) -> "Polygon":
        return cls._raw(())

    @property
    def dim(self) -> int:
        return min(len(self.vertices), 3) - 1

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(("Polygon", self.vertices))

    def __repr__(self):
        return f"Polygon({list(self.vertices)})"

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1]), (v[1], v[0])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def edge_normals(self) -> list[tuple[DualVector, int]]:
        """Primitive inner edge normals with their support values ``Min(P, n)``."""
        if self._normals is None:
            if self.dim != 2:
                raise ValueError("degenerate")
            out = []
            for a, b in self.edges():
                n = primitive((a[1] - b[1], b[0] - a[0]))
                out.append((n, dot(a, n)))
            self._normals = out
        return self._normals

    def translate(self, t: Sequence[int]) -> "Polygon":
        return Polygon._raw(tuple((x + t[0], y + t[1]) for x, y in self.vertices))

    def scale(self, k: int) -> "Polygon":
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return Polygon._raw(tuple((k * x, k * y) for x, y in self.vertices))

    def contains(self, p: Sequence[int], strict: bool = False) -> bool:
        d = self.dim
        if d < 0:
            return False
        if d == 0:
            return not strict and tuple(p) == self.vertices[0]
        if d == 1:
            if strict:
                return False
            a, b = self.vertices
            if cross(a, b, p):
                return False
            return dot((p[0] - a[0], p[1] - a[1]), (b[0] - a[0], b[1] - a[1])) >= 0 and \
                dot((p[0] - b[0], p[1] - b[1]), (a[0] - b[0], a[1] - b[1])) >= 0
        for n, c in self.edge_normals():
            s = dot(p, n)
            if s < c or (strict and s == c):
                return False
        return True

    def boundary_count(self) -> int:
        v = self.vertices
        if len(v) <= 1:
            return len(v)
        if len(v) == 2:
            return gcd(v[1][0] - v[0][0], v[1][1] - v[0][1]) + 1
        return sum(gcd(b[0] - a[0], b[1] - a[1]) for a, b in self.edges())

    def normalized_area(self) -> int:
        if self.dim < 2:
            raise ValueError("degenerate")
        v = self.vertices
        o = v[0]
        return sum(cross(o, v[i], v[i + 1]) for i in range(1, len(v) - 1))

    def lattice_count(self) -> int:
        if self.dim < 2:
            return self.boundary_count()
        return (self.normalized_area() + self.boundary_count() + 2) // 2

    def interior_count(self) -> int:
        if self.dim < 2:
            return 0
        return (self.normalized_area() - self.boundary_count() + 2) // 2

    def _constraints(self):
        return [(n[0], n[1], c) for n, c in self.edge_normals()]

    def lattice_points(self, strict: bool = False) -> list[Point]:
        v = self.vertices
        if not v:
            return []
        if len(v) <= 2:
            if strict:
                return []
            if len(v) == 1:
                return [v[0]]
            a, b = v
            g = gcd(b[0] - a[0], b[1] - a[1])
            dx, dy = (b[0] - a[0]) // g, (b[1] - a[1]) // g
            return sorted((a[0] + j * dx, a[1] + j * dy) for j in range(g + 1))
        ys = [p[1] for p in v]
        return [(x, y) for y, lo, hi in _row_ranges(self._constraints(), min(ys), max(ys), strict)
                for x in range(lo, hi + 1)]

    def interior_lattice_points(self) -> list[Point]:
        return self.lattice_points(strict=True)


class HalfPolygon:
    """
    Half-integral polygon ``Q``, stored as the lattice polygon ``2Q``.

    All coordinates exposed under a ``2x`` name are doubled; ``vertices``
    returns the true (rational) vertices.
    """

    __slots__ = ("doubled",)

    def __init__(self, doubled: Polygon | Iterable[Sequence[int]]):
        if not isinstance(doubled, Polygon):
            doubled = Polygon(doubled)
        self.doubled = doubled

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "HalfPolygon":
        pts = []
        for p in points:
            q = tuple(Fraction(c) * 2 for c in p)
            if any(c.denominator != 1 for c in q):
                raise ValueError(f"point {p} is not half-integral")
            pts.append(tuple(int(c) for c in q))
        return cls(Polygon(pts))

    @classmethod
    def from_lattice(cls, P: Polygon) -> "HalfPolygon":
        return cls(P.scale(2))

    @property
    def dim(self) -> int:
        return self.doubled.dim

    @property
    def vertices(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple((Fraction(x, 2), Fraction(y, 2)) for x, y in self.doubled.vertices)

    def __eq__(self, other):
        return isinstance(other, HalfPolygon) and self.doubled == other.doubled

    def __hash__(self):
        return hash(("HalfPolygon", self.doubled.vertices))

    def __repr__(self):
        return f"HalfPolygon(2x={list(self.doubled.vertices)})"

    def is_lattice(self) -> bool:
        return all(x % 2 == 0 and y % 2 == 0 for x, y in self.doubled.vertices)

    def to_lattice(self) -> Polygon:
        if not self.is_lattice():
            raise ValueError("not a lattice polygon")
        return Polygon._raw(tuple((x // 2, y // 2) for x, y in self.doubled.vertices))

    def normalized_area(self) -> Fraction:
        return Fraction(self.doubled.normalized_area(), 4)

    def lattice_points(self, strict: bool = False) -> list[Point]:
        D = self.doubled
        v = D.vertices
        if not v:
            return []
        if len(v) <= 2:
            pts = [] if strict else D.lattice_points()
            return sorted((x // 2, y // 2) for x, y in pts if x % 2 == 0 and y % 2 == 0)
        cons = [(2 * a, 2 * b, c) for a, b, c in D._constraints()]
        ys = [p[1] for p in v]
        return [(x, y) for y, lo, hi in _row_ranges(cons, min(ys) // 2, -((-max(ys)) // 2), strict)
                for x in range(lo, hi + 1)]

    def interior_lattice_points(self) -> list[Point]:
        return self.lattice_points(strict=True)

    def lattice_count(self) -> int:
        return len(self.lattice_points())


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + translation`` with a unimodular integer matrix."""

    matrix: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    translation: Point = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if abs(a * d - b * c) != 1:
            raise ValueError("matrix is not unimodular")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def linear(self, p):
        (a, b), (c, d) = self.matrix
        return (a * p[0] + b * p[1], c * p[0] + d * p[1])

    def __call__(self, p):
        x, y = self.linear(p)
        return (x + self.translation[0], y + self.translation[1])

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self ∘ other``."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return AffineMap(m, self(other.translation))

    def inverse(self) -> "AffineMap":
        (a, b), (c, d) = self.matrix
        det = self.det
        m = ((d * det, -b * det), (-c * det, a * det))
        inv = AffineMap(m, (0, 0))
        tx, ty = inv.linear(self.translation)
        return AffineMap(m, (-tx, -ty))


def random_unimodular(rng, steps: int = 6, bound: int = 3) -> tuple[tuple[int, int], tuple[int, int]]:
    """Random element of GL2(Z) as a product of elementary shears and a sign."""
    m = ((1, 0), (0, 1))
    for _ in range(steps):
        k = rng.randint(-bound, bound)
        e = ((1, k), (0, 1)) if rng.random() < 0.5 else ((1, 0), (k, 1))
        (a, b), (c, d) = m
        (p, q), (r, s) = e
        m = ((p * a + q * c, p * b + q * d), (r * a + s * c, r * b + s * d))
    if rng.random() < 0.5:
        m = (m[0], (-m[1][0], -m[1][1]))
    return m


# ---------------------------------------------------------------------------
# module-level operations


def convex_hull(points: Iterable[Sequence[int]]) -> Polygon:
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if not pts:
        raise ValueError("empty point set")
    return Polygon._raw(_hull(pts))


def lattice_points(P: Polygon) -> list[Point]:
    return P.lattice_points()


def interior_lattice_points(P: Polygon) -> list[Point]:
    return P.interior_lattice_points()


def normalized_area(P: Polygon) -> int:
    """Twice the Euclidean area; 1 for a unimodular triangle."""
    return P.normalized_area()


def min_support(P, n: Sequence[int]):
    """``Min(P, n)``, the minimum of ``<x, n>`` over ``P``.

    Works for a Polygon (integer result) and a HalfPolygon (half-integer
    Fraction result).
    """
    if not any(n):
        raise ValueError("zero dual vector")
    if isinstance(P, HalfPolygon):
        return Fraction(min(dot(v, n) for v in P.doubled.vertices), 2)
    if not P.vertices:
        raise ValueError("empty polygon")
    return min(dot(v, n) for v in P.vertices)


def apply_map(T: AffineMap, P):
    """Image of a Polygon, or of a HalfPolygon acting on the true coordinates."""
    if isinstance(P, HalfPolygon):
        t2 = (2 * T.translation[0], 2 * T.translation[1])
        return HalfPolygon(Polygon._raw(_hull(sorted(
            (a + t2[0], b + t2[1]) for a, b in map(T.linear, P.doubled.vertices)))))
    return Polygon._raw(_hull(sorted(map(T, P.vertices))))


def _width(verts, n):
    vals = [sum(a * b for a, b in zip(v, n)) for v in verts]
    return max(vals) - min(vals)


def polar_scan(verts, facets, z, slack) -> list[tuple[int, ...]]:
    """
    All primitive ``n`` with ``max_v <z - v, n> <= slack`` over ``verts``.

    ``facets`` are ``(inner_normal, Min)`` pairs of the polytope spanned by
    ``verts`` and ``z`` must be strictly inside it, so the admissible ``n``
    form the bounded region ``slack * (P - z)^polar`` whose vertices are
    ``slack * m / (<z, m> - Min)``.  Works in any dimension; ``z`` may be
    rational.
    """
    dim = len(z)
    if slack < 0:
        return []
    bounds = [0] * dim
    for m, c in facets:
        gap = sum(a * b for a, b in zip(z, m)) - c
        if gap <= 0:
            raise ValueError("point not interior")
        for i in range(dim):
            bnd = (slack * abs(m[i])) // gap
            if bnd > bounds[i]:
                bounds[i] = int(bnd)
    out = []
    diffs = [tuple(zi - vi for zi, vi in zip(z, v)) for v in verts]
    for n in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if not is_primitive(n):
            continue
        if all(sum(a * b for a, b in zip(d, n)) <= slack for d in diffs):
            out.append(n)
    return out


def polar_candidate_normals(P: Polygon, z: Sequence[int], slack: int) -> list[DualVector]:
    """Primitive ``n`` with ``<z, n> - Min(P, n) <= slack``; ``z`` interior."""
    if P.dim != 2 or not P.contains(z, strict=True):
        raise ValueError("point not interior")
    return polar_scan(P.vertices, P.edge_normals(), tuple(z), slack)


def _full_dim_width(verts, normals, dim):
    best = min(_width(verts, m) for m, _ in normals)
    centroid = tuple(Fraction(sum(v[i] for v in verts), len(verts)) for i in range(dim))
    cand = polar_scan(verts, normals, centroid, best)
    widths = {n: _width(verts, n) for n in cand}
    best = min(widths.values())
    dirs = sorted({sign_normalized(n) for n, w in widths.items() if w == best})
    return best, dirs


def lattice_width(P) -> tuple:
    """
    Lattice width and all primitive width directions (up to sign).

    The search starts from the best facet-normal width ``w`` and then scans
    every primitive ``n`` in ``w * (P - c)^polar`` for the vertex centroid
    ``c``; any ``n`` of width at most ``w`` lies there, so the minimum is exact.
    Accepts Polygon, HalfPolygon (half-integer width) and Polytope3.
    """
    if isinstance(P, HalfPolygon):
        w, dirs = lattice_width(P.doubled)
        return Fraction(w, 2), dirs
    if isinstance(P, Polygon):
        if P.dim < 0:
            raise ValueError("empty polygon")
        if P.dim == 0:
            return 0, []
        if P.dim == 1:
            a, b = P.vertices
            return 0, [sign_normalized(primitive((a[1] - b[1], b[0] - a[0])))]
        return _full_dim_width(P.vertices, P.edge_normals(), 2)
    # Polytope3 (avoid import cycle)
    verts = P.lattice_vertices()
    w, dirs = _full_dim_width(verts, P.facets(), 3)
    return Fraction(w, P.denominator) if P.denominator != 1 else w, dirs


class RationalPolygon:
    """Intersection of half-planes ``a x + b y >= c`` (integer a, b; rational c)."""

    __slots__ = ("constraints", "vertices")

    def __init__(self, constraints):
        self.constraints = [(a, b, Fraction(c)) for a, b, c in constraints]
        pts = set()
        cons = self.constraints
        for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(cons, 2):
            d = a1 * b2 - a2 * b1
            if d == 0:
                continue
            x = (c1 * b2 - c2 * b1) / d
            y = (a1 * c2 - a2 * c1) / d
            if all(a * x + b * y >= c for a, b, c in cons):
                pts.add((x, y))
        self.vertices = _hull(sorted(pts))

    def __repr__(self):
        return "RationalPolygon(" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + ")"

    def _yrange(self, scale=1):
        ys = [v[1] * scale for v in self.vertices]
        return _ceil_div(min(ys).numerator, min(ys).denominator), max(ys) // 1

    def lattice_points(self) -> list[Point]:
        if not self.vertices:
            return []
        lo, hi = self._yrange()
        return [(x, y) for y, a, b in _row_ranges(self.constraints, lo, int(hi)) for x in range(a, b + 1)]

    def half_integral_hull(self) -> HalfPolygon:
        """Convex hull of the points of ``self ∩ M/2``."""
        if not self.vertices:
            return HalfPolygon(Polygon.empty())
        lo, hi = self._yrange(2)
        cons = [(a, b, 2 * c) for a, b, c in self.constraints]
        ends = []
        for y, a, b in _row_ranges(cons, lo, int(hi)):
            ends.append((a, y))
            ends.append((b, y))
        return HalfPolygon(Polygon(ends))

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)

    def is_half_integral(self) -> bool:
        return all((2 * x).denominator == 1 and (2 * y).denominator == 1 for x, y in self.vertices)
