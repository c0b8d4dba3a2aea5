"""
Normal forms under the affine unimodular group ``GL2(Z) ⋉ Z^2``.

For a 2-dimensional polygon every automorphism sends edges to edges, so we
normalize once per (starting vertex, orientation): the starting vertex goes
to the origin, the outgoing edge direction to ``(1, 0)``, the polygon into
the upper half-plane, and the remaining shear is fixed by putting the
incoming neighbour at ``x`` in ``[0, y)``.  The lexicographically smallest
image vertex sequence is the normal form.

Half-integral polygons are normalized on their doubled polygon with the
translation restricted to ``2 Z^2``; the parity class of the image of the
starting vertex is an invariant and is kept as the offset.
"""

from __future__ import annotations

import struct
from math import gcd
from typing import Union

from .lattice import AffineMap, HalfPolygon, Polygon, _hull

CanonicalKey = bytes

_TAG_LATTICE = b"L"
_TAG_HALF = b"H"


def _bezout(a: int, b: int) -> tuple[int, int]:
    # p*a + q*b == 1 for primitive (a, b)
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _candidates(verts: tuple):
    """Yield ``(linear_matrix, origin_vertex, ordered_vertex_sequence)``."""
    k = len(verts)
    for i in range(k):
        for orient in (1, -1):
            if orient == 1:
                seq = [verts[(i + j) % k] for j in range(k)]
            else:
                seq = [verts[(i - j) % k] for j in range(k)]
            o, nxt, prv = seq[0], seq[1], seq[-1]
            dx, dy = nxt[0] - o[0], nxt[1] - o[1]
            g = gcd(dx, dy)
            ux, uy = dx // g, dy // g
            p, q = _bezout(ux, uy)
            row2 = (-uy, ux) if orient == 1 else (uy, -ux)
            # image of prv under the unsheared map
            rx, ry = prv[0] - o[0], prv[1] - o[1]
            px = p * rx + q * ry
            py = row2[0] * rx + row2[1] * ry
            s = -(px // py)
            m = ((p + s * row2[0], q + s * row2[1]), row2)
            yield m, o, seq


def _apply_linear(m, seq, o, offset=(0, 0)):
    (a, b), (c, d) = m
    out = []
    for x, y in seq:
        x -= o[0]
        y -= o[1]
        out.append((a * x + b * y + offset[0], c * x + d * y + offset[1]))
    return tuple(out)


def _segment_lattice(P: Polygon):
    a, b = P.vertices
    dx, dy = b[0] - a[0], b[1] - a[1]
    L = gcd(dx, dy)
    ux, uy = dx // L, dy // L
    p, q = _bezout(ux, uy)
    m = ((p, q), (-uy, ux))
    T = AffineMap(m, (0, 0))
    tx, ty = T.linear(a)
    T = AffineMap(m, (-tx, -ty))
    return Polygon._raw(((0, 0), (L, 0))), T


def canonical_form(P: Polygon) -> tuple[Polygon, AffineMap]:
    """Normal form of a lattice polygon and a map carrying ``P`` onto it."""
    d = P.dim
    if d < 0:
        raise ValueError("empty polygon has no normal form")
    if d == 0:
        (x, y), = P.vertices
        return Polygon._raw(((0, 0),)), AffineMap(((1, 0), (0, 1)), (-x, -y))
    if d == 1:
        return _segment_lattice(P)
    best = None
    for m, o, seq in _candidates(P.vertices):
        img = _apply_linear(m, seq, o)
        if best is None or img < best[0]:
            best = (img, m, o)
    img, m, o = best
    T = AffineMap(m, (0, 0))
    tx, ty = T.linear(o)
    T = AffineMap(m, (-tx, -ty))
    return Polygon._raw(_hull(sorted(img))), T


def _half_segment(D: Polygon):
    a, b = D.vertices
    best = None
    for start, end in ((a, b), (b, a)):
        dx, dy = end[0] - start[0], end[1] - start[1]
        L = gcd(dx, dy)
        ux, uy = dx // L, dy // L
        p, q = _bezout(ux, uy)
        for sgn in (1, -1):
            for k in (0, 1):
                row2 = (-uy * sgn, ux * sgn)
                m = ((p + k * row2[0], q + k * row2[1]), row2)
                sx = m[0][0] * start[0] + m[0][1] * start[1]
                sy = m[1][0] * start[0] + m[1][1] * start[1]
                par = (sx % 2, sy % 2)
                img = ((par[0], par[1]), (L + par[0], par[1]))
                if best is None or img < best[0]:
                    best = (img, m, (par[0] - sx, par[1] - sy))
    return best


def canonical_form_half(Q: HalfPolygon) -> tuple[HalfPolygon, AffineMap]:
    """
    Normal form of a half-integral polygon under affine unimodular maps.

    The returned map acts on the true coordinates of ``Q`` (so its
    translation is integral).
    """
    D = Q.doubled
    d = D.dim
    if d < 0:
        raise ValueError("empty polygon has no normal form")
    if d == 0:
        (x, y), = D.vertices
        par = (x % 2, y % 2)
        return (HalfPolygon(Polygon._raw((par,))),
                AffineMap(((1, 0), (0, 1)), ((par[0] - x) // 2, (par[1] - y) // 2)))
    if d == 1:
        img, m, t2 = _half_segment(D)
        return HalfPolygon(Polygon._raw(img)), AffineMap(m, (t2[0] // 2, t2[1] // 2))
    best = None
    for m, o, seq in _candidates(D.vertices):
        (a, b), (c, e) = m
        ox, oy = a * o[0] + b * o[1], c * o[0] + e * o[1]
        par = (ox % 2, oy % 2)
        img = _apply_linear(m, seq, o, par)
        if best is None or img < best[0]:
            best = (img, m, (par[0] - ox, par[1] - oy))
    img, m, t2 = best
    return HalfPolygon(Polygon._raw(_hull(sorted(img)))), AffineMap(m, (t2[0] // 2, t2[1] // 2))


def encode_key(P: Union[Polygon, HalfPolygon], tag: bytes) -> CanonicalKey:
    verts = P.doubled.vertices if isinstance(P, HalfPolygon) else P.vertices
    flat = [c for v in verts for c in v]
    return tag + struct.pack(f">I{len(flat)}q", len(verts), *flat)


def decode_key(key: CanonicalKey) -> Union[Polygon, HalfPolygon]:
    tag, body = key[:1], key[1:]
    (count,) = struct.unpack(">I", body[:4])
    if len(body) != 4 + 16 * count:
        raise ValueError("malformed canonical key")
    flat = struct.unpack(f">{2 * count}q", body[4:])
    verts = tuple(zip(flat[::2], flat[1::2]))
    if tag == _TAG_LATTICE:
        return Polygon._raw(verts)
    if tag == _TAG_HALF:
        return HalfPolygon(Polygon._raw(verts))
    raise ValueError("unknown key tag")


def canonical_key(P: Union[Polygon, HalfPolygon]) -> CanonicalKey:
    """
    Byte key of the equivalence class.

    Layout: one tag byte (``L`` lattice, ``H`` half-integral), the vertex
    count as big-endian uint32, then the canonical vertices (doubled for
    ``H``) as big-endian int64 pairs.
    """
    if isinstance(P, HalfPolygon):
        return encode_key(canonical_form_half(P)[0], _TAG_HALF)
    return encode_key(canonical_form(P)[0], _TAG_LATTICE)


def are_equivalent(P, Q) -> bool:
    if type(P) is not type(Q):
        raise TypeError("cannot compare a Polygon with a HalfPolygon")
    if P.dim != Q.dim:
        return False
    return canonical_key(P) == canonical_key(Q)
