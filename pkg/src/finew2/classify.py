"""
Classification of 2-dimensional Fine interiors of width-2 lattice 3-polytopes.

A Fine interior ``F`` with ``g`` lattice points is the union of the lattice
polygon ``B = conv(F ∩ M)`` (the *base*) with half-integral triangles
("hats") sitting on edges of ``B`` that carry exactly two lattice points.
Each hat is equivalent to ``conv((0,0), (1,0), (1/2, h))`` with
``h <= g/2 + 1``.  So for every base with ``g`` points we enumerate all
admissible hat decorations, keep the convex ones, and accept those that pass
the Fine interior test.  Since ``B`` is recovered from ``F``, different bases
never produce the same class.

All geometry is done in doubled coordinates.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator, Optional

from .canonical import _bezout, canonical_form_half, canonical_key, decode_key
from .enumeration import enumerate_polygons
from .fine import fine_interior_test
from .lattice import HalfPolygon, Polygon, cross

log = logging.getLogger(__name__)

SEGMENT = Polygon([(0, 0), (1, 0)])


class CheckpointError(RuntimeError):
    """A checkpoint directory that cannot be trusted for resuming."""


@dataclass(frozen=True)
class HatSpec:
    """A hat in doubled coordinates: base edge, apex, and twice its lattice height."""

    edge2x: tuple[tuple[int, int], tuple[int, int]]
    apex2x: tuple[int, int]
    height2x: int

    @property
    def height(self):
        from fractions import Fraction
        return Fraction(self.height2x, 2)

    def triangle(self) -> HalfPolygon:
        return HalfPolygon(Polygon(list(self.edge2x) + [self.apex2x]))

    def to_json(self):
        return {"edge2x": [list(p) for p in self.edge2x],
                "apex2x": list(self.apex2x), "height2x": self.height2x}

    @classmethod
    def from_json(cls, d):
        a, b = d["edge2x"]
        return cls((tuple(a), tuple(b)), tuple(d["apex2x"]), int(d["height2x"]))


@dataclass
class ClassificationRecord:
    fine_interior: HalfPolygon
    g: int
    base: bytes
    hats: tuple[HatSpec, ...]
    invariants: Optional[object] = field(default=None, compare=False)

    @property
    def key(self) -> bytes:
        return canonical_key(self.fine_interior)

    def to_json(self) -> dict:
        return {"g": self.g,
                "vertices2x": [list(v) for v in self.fine_interior.doubled.vertices],
                "base_key": self.base.hex(),
                "hats": [h.to_json() for h in self.hats]}

    def to_line(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, d) -> "ClassificationRecord":
        F = HalfPolygon(Polygon([tuple(v) for v in d["vertices2x"]]))
        return cls(F, int(d["g"]), bytes.fromhex(d["base_key"]),
                   tuple(HatSpec.from_json(h) for h in d["hats"]))


# ---------------------------------------------------------------- hats

def _outward_frame(a, b):
    # primitive u = b - a and w with det(u, w) = -1, i.e. w points to the
    # right of a -> b (outside of a ccw polygon)
    u = (b[0] - a[0], b[1] - a[1])
    p, q = _bezout(*u)
    return u, (q, -p)


def _apex(a2, u, w, X2, H2):
    return (a2[0] + X2 * u[0] + H2 * w[0], a2[1] + X2 * u[1] + H2 * w[1])


def _k_range(a2, u, w, H2, conds):
    # integer k with A + B k >= 0 for each (A, B); X2 = 1 + k H2
    lo, hi = None, None
    for f in conds:
        A = f(_apex(a2, u, w, 1, H2))
        B = f(_apex(a2, u, w, 1 + H2, H2)) - A
        if B == 0:
            if A < 0:
                return range(0)
        elif B > 0:
            v = -(A // B)  # ceil(-A / B)
            lo = v if lo is None else max(lo, v)
        else:
            v = A // (-B)  # floor(A / -B)
            hi = v if hi is None else min(hi, v)
    if lo is None or hi is None:
        raise ValueError("unbounded hat offsets")
    return range(lo, hi + 1)


def hat_candidates(base: Polygon, edge, g: int) -> list[HatSpec]:
    """
    Hats over ``edge`` (a ccw edge ``(a, b)`` of ``base``) with twice-height
    ``1 .. g + 2`` whose triangle is lattice-free and whose apex keeps both
    endpoints of the edge on the boundary of ``base ∪ hat``.

    Lattice-freeness pins the apex offset to ``1/2 + k h``.  For the 2-point
    segment the edge is taken as ``(a, b)`` with the hat on its right side.
    """
    a, b = edge
    u, w = _outward_frame(a, b)
    if abs(u[0]) + abs(u[1]) == 0 or _gcd2(u) != 1:
        return []
    a2, b2 = (2 * a[0], 2 * a[1]), (2 * b[0], 2 * b[1])
    out = []
    if base.dim == 2:
        verts = base.vertices
        k = len(verts)
        i = verts.index(tuple(a))
        if verts[(i + 1) % k] != tuple(b):
            raise ValueError("edge is not a ccw edge of the base")
        p2 = tuple(2 * c for c in verts[(i - 1) % k])
        q2 = tuple(2 * c for c in verts[(i + 2) % k])
        conds = (lambda v: _turn(p2, a2, v), lambda v: _turn(v, b2, q2))
        for H2 in range(1, g + 3):
            for kk in _k_range(a2, u, w, H2, conds):
                out.append(HatSpec((a2, b2), _apex(a2, u, w, 1 + kk * H2, H2), H2))
    else:
        for H2 in range(1, g + 3):
            out.append(HatSpec((a2, b2), _apex(a2, u, w, 1, H2), H2))
    return out


def _gcd2(u):
    from math import gcd
    return gcd(u[0], u[1])


def _turn(p, a, v):
    # >= 0 when p -> a -> v does not turn right
    return (a[0] - p[0]) * (v[1] - a[1]) - (a[1] - p[1]) * (v[0] - a[0])


def _segment_candidates(g: int) -> Iterator[list[HatSpec]]:
    # base conv((0,0),(1,0)); "down" hats lie right of (0,0)->(1,0), "up"
    # hats right of (1,0)->(0,0).  The up hat is sheared to offset 1/2;
    # a lone down hat is a reflected lone up hat.
    for H2 in range(1, g + 3):
        up = HatSpec(((2, 0), (0, 0)), (1, H2), H2)
        yield [up]
        for D2 in range(1, g + 3):
            # the apex chord must cross the closed base segment:
            # |k| * H2 * D2 <= H2 + D2
            kmax = (H2 + D2) // (H2 * D2)
            for k in range(-kmax, kmax + 1):
                yield [up, HatSpec(((0, 0), (2, 0)), (1 + k * D2, -D2), D2)]


def assemble_candidates(base: Polygon, g: int) -> list[HalfPolygon]:
    """
    Convex decorations of ``base`` by at most one hat per primitive edge.

    Adjacent hats must keep their shared vertex convex; every base vertex
    stays on the boundary.  The bare base is included when it is
    2-dimensional.
    """
    return [c for c, _ in _assemble(base, g)]


def _assemble(base: Polygon, g: int):
    if base.dim == 1:
        if base.lattice_count() != 2:
            return []
        # normalize to the unit segment, then map back
        out = []
        from .canonical import canonical_form
        _, T = canonical_form(base)
        Ti = T.inverse()
        for hats in _segment_candidates(g):
            pts = [(2 * x, 2 * y) for x, y in ((0, 0), (1, 0))] + [h.apex2x for h in hats]
            pts = [_map2(Ti, p) for p in pts]
            out.append((HalfPolygon(Polygon(pts)), hats))
        return out
    verts = base.vertices
    n = len(verts)
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    options = []
    for a, b in edges:
        if _gcd2((b[0] - a[0], b[1] - a[1])) == 1:
            options.append([None] + hat_candidates(base, (a, b), g))
        else:
            options.append([None])
    base2 = [(2 * x, 2 * y) for x, y in verts]
    results = []
    chosen: list = [None] * n

    def compatible(i, h):
        # convexity at the vertex shared with edge i - 1
        prev = chosen[i - 1] if i > 0 else None
        if h is not None and prev is not None:
            if _turn(prev.apex2x, base2[i], h.apex2x) < 0:
                return False
        if i == n - 1 and h is not None and chosen[0] is not None:
            if _turn(h.apex2x, base2[0], chosen[0].apex2x) < 0:
                return False
        return True

    def rec(i):
        if i == n:
            hats = [h for h in chosen if h is not None]
            pts = base2 + [h.apex2x for h in hats]
            results.append((HalfPolygon(Polygon(pts)), hats))
            return
        for h in options[i]:
            if compatible(i, h):
                chosen[i] = h
                rec(i + 1)
        chosen[i] = None

    rec(0)
    return results


def _map2(T, p):
    # apply a lattice affine map to a doubled point
    (a, b), (c, d) = T.matrix
    return (a * p[0] + b * p[1] + 2 * T.translation[0],
            c * p[0] + d * p[1] + 2 * T.translation[1])


# ---------------------------------------------------------------- records

def hat_decomposition(F: HalfPolygon) -> Optional[tuple[Polygon, tuple[HatSpec, ...]]]:
    """
    Split ``F`` into ``conv(F ∩ M)`` and standard hats, or return ``None``
    when ``F`` is not of that shape.

    Every vertex of ``F`` outside the base must be the apex of a triangle on
    a primitive base edge equivalent to ``conv((0,0),(1,0),(1/2,h))``, and
    the areas must add up.
    """
    pts = F.lattice_points()
    base = Polygon(pts)
    if base.dim < 1:
        return None
    D = F.doubled
    base2 = base.scale(2)
    if base.dim == 1:
        a, b = base.vertices
        sides = [(b, a), (a, b)]
    else:
        sides = base.edges()
    hats = []
    used = set()
    for a, b in sides:
        a2, b2 = (2 * a[0], 2 * a[1]), (2 * b[0], 2 * b[1])
        beyond = [v for v in D.vertices if cross(a2, b2, v) < 0]
        if not beyond:
            continue
        if len(beyond) != 1 or _gcd2((b[0] - a[0], b[1] - a[1])) != 1:
            return None
        v = beyond[0]
        H2 = -cross(a2, b2, v) // 2
        hspec = HatSpec((a2, b2), v, H2)
        std = HalfPolygon(Polygon([(0, 0), (2, 0), (1, H2)]))
        if canonical_key(hspec.triangle()) != canonical_key(std):
            return None
        hats.append(hspec)
        used.add(v)
    if any(v not in used and v not in base2.vertices and not base2.contains(v) for v in D.vertices):
        return None
    area = (base2.normalized_area() if base.dim == 2 else 0) + sum(h.triangle().doubled.normalized_area() for h in hats)
    if area != D.normalized_area():
        return None
    return base, tuple(hats)


def _record_for(F: HalfPolygon, g: int) -> ClassificationRecord:
    Fc, _ = canonical_form_half(F)
    dec = hat_decomposition(Fc)
    if dec is None:
        raise AssertionError("classified polygon without a hat decomposition")
    base, hats = dec
    return ClassificationRecord(Fc, g, canonical_key(base), hats)


def classify_base(base: Polygon, g: int, stats: Optional[dict] = None) -> list[ClassificationRecord]:
    """All Fine interiors with base ``base`` (``g`` lattice points), sorted by key.

    ``stats``, if given, is updated with candidate, class and accepted counts.
    """
    seen: dict[bytes, Optional[HalfPolygon]] = {}
    ncand = 0
    for C, _ in _assemble(base, g):
        ncand += 1
        if C.dim != 2:
            continue
        key = canonical_key(C)
        if key in seen:
            continue
        ok = C.lattice_count() == g and fine_interior_test(C)
        seen[key] = C if ok else None
    recs = [_record_for(C, g) for k, C in sorted(seen.items()) if C is not None]
    if stats is not None:
        for k, v in (("candidates", ncand), ("classes", len(seen)), ("accepted", len(recs))):
            stats[k] = stats.get(k, 0) + v
    return recs


def bases(g: int, frontier_dir=None) -> list[Polygon]:
    """Base polygons for ``g``: all lattice polygons with ``g`` points, or the unit segment."""
    if g < 2:
        raise ValueError("need g >= 2")
    if g == 2:
        return [SEGMENT]
    return enumerate_polygons(g, frontier_dir)


def _work(item):
    g, key_hex = item
    base = decode_key(bytes.fromhex(key_hex))
    stats: dict = {}
    return key_hex, [r.to_line() for r in classify_base(base, g, stats)], stats


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FINEW2_WORKERS", "1")))
    except ValueError:
        return 1


def classify(g: int, workers: Optional[int] = None) -> list[ClassificationRecord]:
    """All 2-dimensional Fine interiors with ``g`` lattice points, sorted by canonical key."""
    out = {}
    for _, lines, _ in _run_items(g, bases(g), workers):
        for line in lines:
            r = ClassificationRecord.from_json(json.loads(line))
            out[r.key] = r
    return [out[k] for k in sorted(out)]


def _run_items(g, base_list, workers):
    workers = _default_workers() if workers is None else workers
    items = [(g, canonical_key(B).hex()) for B in base_list]
    if workers <= 1 or len(items) <= 1:
        for it in items:
            yield _work(it)
        return
    with ProcessPoolExecutor(max_workers=workers) as ex:
        yield from ex.map(_work, items, chunksize=max(1, len(items) // (8 * workers)))


# ---------------------------------------------------------------- range runs

def _read_checkpoint(gdir: Path, valid_keys: set[str]):
    done: set[str] = set()
    lines_by_base: dict[str, list[str]] = {}
    done_path = gdir / "done"
    part_path = gdir / "part.jsonl"
    if done_path.exists():
        raw = done_path.read_text().split("\n")
        if raw and raw[-1] == "":
            raw.pop()
        else:
            raw = raw[:-1]  # unterminated last line: an interrupted write
        for s in raw:
            if s not in valid_keys:
                raise CheckpointError(f"{done_path}: unknown base key {s!r}")
            done.add(s)
    if part_path.exists():
        raw = part_path.read_text().split("\n")
        if raw and raw[-1] == "":
            raw.pop()
        elif raw:
            raw = raw[:-1]
        for num, s in enumerate(raw, 1):
            try:
                d = json.loads(s)
                bk = d["base_key"]
                ClassificationRecord.from_json(d)
            except (ValueError, KeyError, TypeError) as e:
                raise CheckpointError(f"{part_path}:{num}: {e}") from None
            lines_by_base.setdefault(bk, []).append(s)
    return done, lines_by_base


def _atomic_write(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def classify_range(g_min: int, g_max: int, checkpoint_dir=None, workers: Optional[int] = None,
                   out_path=None,
                   on_base_done: Optional[Callable[[int, str], None]] = None
                   ) -> Iterator[ClassificationRecord]:
    """
    Records for every ``g`` in ``[g_min, g_max]``, ordered by ``g`` then key.

    With ``checkpoint_dir`` each finished base is recorded in
    ``g_NNN/done`` (its records go to ``g_NNN/part.jsonl`` first), so an
    interrupted run resumes without recomputing it.  A finished ``g`` is
    written to ``g_NNN/records.jsonl``.  ``out_path`` receives all records as
    JSON Lines.  ``on_base_done(g, base_key_hex)`` is called after each
    base is checkpointed.
    """
    if not 2 <= g_min <= g_max:
        raise ValueError("need 2 <= g_min <= g_max")
    root = Path(checkpoint_dir) if checkpoint_dir is not None else None
    all_lines = []
    for g in range(g_min, g_max + 1):
        lines = _classify_g_lines(g, root, workers, on_base_done)
        all_lines.extend(lines)
        for s in lines:
            yield ClassificationRecord.from_json(json.loads(s))
    if out_path is not None:
        _atomic_write(Path(out_path), "".join(s + "\n" for s in all_lines))


def _log_stats(g, stats):
    c = stats.get("candidates", 0)
    if c:
        log.info("g=%d: %d candidates, %d distinct, %d Fine interiors (dedup ratio %.2f)",
                 g, c, stats["classes"], stats["accepted"], stats["classes"] / c)


def _merge(total, stats):
    for k, v in stats.items():
        total[k] = total.get(k, 0) + v


def _sorted_lines(lines):
    keyed = {}
    for s in lines:
        r = ClassificationRecord.from_json(json.loads(s))
        keyed[r.key] = r.to_line()
    return [keyed[k] for k in sorted(keyed)]


def _classify_g_lines(g, root, workers, on_base_done):
    total: dict = {}
    if root is None:
        lines = []
        for _, ls, st in _run_items(g, bases(g), workers):
            lines.extend(ls)
            _merge(total, st)
        _log_stats(g, total)
        return _sorted_lines(lines)
    gdir = root / f"g_{g:03d}"
    final = gdir / "records.jsonl"
    if final.exists():
        return [s for s in final.read_text().split("\n") if s]
    gdir.mkdir(parents=True, exist_ok=True)
    base_list = bases(g, root / "frontiers")
    keyed = {canonical_key(B).hex(): B for B in base_list}
    done, by_base = _read_checkpoint(gdir, set(keyed))
    kept = [s for k in sorted(done) for s in by_base.get(k, [])]
    # rewrite the partial files without orphaned or truncated lines
    _atomic_write(gdir / "part.jsonl", "".join(s + "\n" for s in kept))
    _atomic_write(gdir / "done", "".join(k + "\n" for k in sorted(done)))
    todo = [keyed[k] for k in sorted(keyed) if k not in done]
    lines = list(kept)
    with open(gdir / "part.jsonl", "a") as part, open(gdir / "done", "a") as dn:
        for key_hex, ls, st in _run_items(g, todo, workers):
            _merge(total, st)
            for s in ls:
                part.write(s + "\n")
            part.flush()
            os.fsync(part.fileno())
            dn.write(key_hex + "\n")
            dn.flush()
            os.fsync(dn.fileno())
            lines.extend(ls)
            if on_base_done is not None:
                on_base_done(g, key_hex)
    _log_stats(g, total)
    result = _sorted_lines(lines)
    _atomic_write(final, "".join(s + "\n" for s in result))
    _atomic_write(gdir / "done", "".join(k + "\n" for k in sorted(keyed)))
    return result
