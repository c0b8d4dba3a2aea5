"""
Enumeration of lattice polygons by their number of lattice points.

Every polygon with ``n`` lattice points arises from one with ``n - 1`` by
adding a single lattice point: removing a vertex of ``P ∩ M`` leaves a
lattice point set that is again the point set of a polygon.  We grow from the
one-point polygon and keep one canonical representative per class,
segments included.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import floor, ceil
from pathlib import Path

from .canonical import CanonicalKey, canonical_form, canonical_key, decode_key
from .lattice import Polygon, _hull


def _count_with(P: Polygon, v) -> tuple[Polygon, int]:
    Q = Polygon._raw(_hull(sorted(set(P.vertices) | {v})))
    return Q, Q.lattice_count()


def _candidate_box(P: Polygon, K: int):
    # v with |det(b - a, v - a)| <= K and |det(c - a, v - a)| <= K
    a, b, c = P.vertices[:3]
    u = (b[0] - a[0], b[1] - a[1])
    w = (c[0] - a[0], c[1] - a[1])
    det = u[0] * w[1] - u[1] * w[0]
    xs, ys = [], []
    for s in (K, -K):
        for t in (K, -K):
            # solve u x dv = s, w x dv = t  for dv
            dx = Fraction(s * w[0] - t * u[0], det)
            dy = Fraction(s * w[1] - t * u[1], det)
            xs.append(a[0] + dx)
            ys.append(a[1] + dy)
    return floor(min(xs)), ceil(max(xs)), floor(min(ys)), ceil(max(ys))


def augment(P: Polygon) -> list[Polygon]:
    """
    All classes of ``conv(P ∪ {v})`` that gain exactly the one lattice point ``v``.

    Segments are first brought to ``conv((0,0), (L,0))``; off-line points are
    then taken at height ``h >= 1`` with ``x`` in ``[0, h)`` (the shear
    stabilizer of the segment).  For 2-dimensional ``P`` the new hull has
    at most ``n + 1`` lattice points, so by Pick every triangle spanned by
    two vertices and ``v`` has normalized area at most ``2n``; that
    parallelogram is scanned exhaustively.
    """
    n = P.lattice_count()
    found: dict[CanonicalKey, Polygon] = {}

    def consider(base: Polygon, v):
        if base.contains(v):
            return
        Q, cnt = _count_with(base, v)
        if cnt == n + 1:
            key = canonical_key(Q)
            if key not in found:
                found[key] = canonical_form(Q)[0]

    if P.dim == 0:
        consider(P, (P.vertices[0][0] + 1, P.vertices[0][1]))
    elif P.dim == 1:
        S, _ = canonical_form(P)
        L = S.vertices[1][0]
        consider(S, (-1, 0))
        consider(S, (L + 1, 0))
        for h in range(1, 2 * (n + 1) + 1):
            for x in range(h):
                consider(S, (x, h))
    elif P.dim == 2:
        x0, x1, y0, y1 = _candidate_box(P, 2 * n)
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                consider(P, (x, y))
    return [found[k] for k in sorted(found)]


def _write_frontier(path: Path, keys) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w") as f:
        for k in sorted(keys):
            f.write(k.hex() + "\n")
    os.replace(tmp, path)


def read_frontier(path) -> list[Polygon]:
    """Read a frontier file (one hex CanonicalKey per line)."""
    out = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(decode_key(bytes.fromhex(line)))
    return out


def polygon_frontiers(n_max: int, frontier_dir=None) -> dict[int, list[Polygon]]:
    """
    Canonical polygons (dimension 1 and 2) with exactly ``n`` lattice points,
    for every ``1 <= n <= n_max``.

    With ``frontier_dir``, each level is stored as ``frontier_NNN.txt`` and
    existing files are reused, so long runs can resume.
    """
    if frontier_dir is not None:
        frontier_dir = Path(frontier_dir)
        frontier_dir.mkdir(parents=True, exist_ok=True)
    levels = {1: [Polygon([(0, 0)])]}
    for n in range(2, n_max + 1):
        path = frontier_dir / f"frontier_{n:03d}.txt" if frontier_dir else None
        if path is not None and path.exists():
            levels[n] = read_frontier(path)
            continue
        found: dict[CanonicalKey, Polygon] = {}
        for P in levels[n - 1]:
            for Q in augment(P):
                found.setdefault(canonical_key(Q), Q)
        levels[n] = [found[k] for k in sorted(found)]
        if path is not None:
            _write_frontier(path, found)
    return levels


def enumerate_polygons(g: int, frontier_dir=None) -> list[Polygon]:
    """One canonical representative of every 2-dimensional lattice polygon
    with exactly ``g`` lattice points, sorted by canonical key."""
    if g < 3:
        raise ValueError("need g >= 3 for a 2-dimensional lattice polygon")
    return [P for P in polygon_frontiers(g, frontier_dir)[g] if P.dim == 2]


def brute_force_polygons(g: int, box_half_width: int) -> list[Polygon]:
    """
    Reference enumeration by depth-first search over lattice point sets.

    Polygons are translated so their lexicographically smallest lattice point
    is the origin; the remaining points are drawn from
    ``[0, b] x [-b, b]``.  Points are added in lexicographic order and a
    branch dies as soon as its hull has more than ``g`` points, a point it
    can no longer add, or too much area for ``g`` points.  Intended for test
    use only (``g <= 8``, ``b <= 10``).
    """
    if g > 8 or box_half_width > 10:
        raise ValueError("brute force is limited to g <= 8 and box_half_width <= 10")
    b = box_half_width
    pts = sorted((x, y) for x in range(0, b + 1) for y in range(-b, b + 1) if (x, y) > (0, 0))
    max_area = 2 * g - 5
    found: dict[CanonicalKey, Polygon] = {}

    def dfs(chosen: list, start: int):
        for idx in range(start, len(pts)):
            p = pts[idx]
            S = chosen + [p]
            H = Polygon(S)
            if H.dim == 2 and H.normalized_area() > max_area:
                continue
            if H.lattice_count() > g:
                continue
            sset = set(S)
            if any(q < p and q not in sset for q in H.lattice_points()):
                continue
            if len(S) == g:
                if H.dim == 2:
                    found.setdefault(canonical_key(H), canonical_form(H)[0])
                continue
            dfs(S, idx + 1)

    dfs([(0, 0)], 0)
    return [found[k] for k in sorted(found)]
