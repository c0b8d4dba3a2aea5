"""
Chern numbers of the minimal surfaces attached to classified Fine interiors.

For a 2-dimensional Fine interior ``F`` with ``chi = |F ∩ M|`` lattice points
the minimal surface has ``c1^2 = 2 Vol(F)`` (normalized area) and
``c2 = 12 (1 + chi) - c1^2``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional

from .lattice import HalfPolygon, Polygon

# Scott's bound on boundary points has exactly one exception, 3 * unit triangle
_THREE_DELTA = None


def _three_delta_key():
    global _THREE_DELTA
    if _THREE_DELTA is None:
        from .canonical import canonical_key
        _THREE_DELTA = canonical_key(HalfPolygon.from_lattice(Polygon([(0, 0), (3, 0), (0, 3)])))
    return _THREE_DELTA


@dataclass(frozen=True)
class ChernInvariants:
    chi: int
    c1sq: int
    c2: int
    hollow: bool
    fine_is_lattice: bool


@dataclass(frozen=True)
class InequalityReport:
    bmy: bool
    noether: bool
    mod12: bool
    # None when not applicable (half-integral F)
    scott_bound: Optional[bool]
    upper_bound: Optional[bool]

    def all_hold(self) -> bool:
        return all(v is not False for v in (self.bmy, self.noether, self.mod12,
                                            self.scott_bound, self.upper_bound))


@dataclass(frozen=True)
class NoetherStatus:
    on_line: bool
    gap: int
    hollow: bool


@dataclass(frozen=True)
class ReportRow:
    chi: int
    count: int
    c1sq_min: int
    c1sq_max: int
    missing: tuple[int, ...] = ()
    partial: bool = False

    @property
    def is_interval(self) -> bool:
        return not self.missing


def chern(F: HalfPolygon) -> ChernInvariants:
    """Chern invariants of the surface whose Fine interior is ``F``."""
    if F.dim < 2:
        raise ValueError("not a surface of general type case")
    twice = F.doubled.normalized_area()
    if twice % 2:
        raise ValueError("normalized area of F is not half-integral")
    c1sq = twice // 2
    chi = F.lattice_count()
    return ChernInvariants(chi, c1sq, 12 * (1 + chi) - c1sq,
                           hollow=not F.interior_lattice_points(),
                           fine_is_lattice=F.is_lattice())


def is_scott_exception(F: HalfPolygon) -> bool:
    """Whether ``F`` is equivalent to three times the unit triangle."""
    from .canonical import canonical_key
    return F.is_lattice() and canonical_key(F) == _three_delta_key()


def check_inequalities(inv: ChernInvariants) -> InequalityReport:
    """
    BMY, Noether and the mod-12 condition, plus the two lattice-polygon bounds
    (only meaningful when ``F`` is a lattice polygon, ``None`` otherwise).
    The Scott-derived bound does not hold for ``F = 3 * unit triangle``.
    """
    c1, c2 = inv.c1sq, inv.c2
    lat = inv.fine_is_lattice
    return InequalityReport(
        bmy=c1 <= 3 * c2,
        noether=5 * c1 >= c2 - 36,
        mod12=(c1 + c2) % 12 == 0,
        scott_bound=(7 * c1 >= 2 * c2 - 96) if lat else None,
        upper_bound=(2 * c1 <= c2 - 42) if lat else None,
    )


def noether_line_status(inv: ChernInvariants) -> NoetherStatus:
    gap = inv.c1sq - (2 * inv.chi - 4)
    return NoetherStatus(gap == 0, gap, inv.hollow)


def report(records: Iterable, complete_chis: Optional[Iterable[int]] = None) -> list[ReportRow]:
    """
    Per-``chi`` count and ``c1^2`` range.

    ``records`` may hold ClassificationRecords, HalfPolygons or
    ChernInvariants.  ``missing`` lists integers in ``[min, max]`` that are not
    attained.  When ``complete_chis`` is given, rows for other ``chi`` are
    flagged ``partial``.
    """
    values: dict[int, set[int]] = {}
    counts: dict[int, int] = {}
    for r in records:
        inv = _invariants(r)
        values.setdefault(inv.chi, set()).add(inv.c1sq)
        counts[inv.chi] = counts.get(inv.chi, 0) + 1
    complete = None if complete_chis is None else set(complete_chis)
    rows = []
    for chi in sorted(counts):
        vs = values[chi]
        lo, hi = min(vs), max(vs)
        missing = tuple(v for v in range(lo, hi + 1) if v not in vs)
        rows.append(ReportRow(chi, counts[chi], lo, hi, missing,
                              partial=complete is not None and chi not in complete))
    return rows


def _invariants(r) -> ChernInvariants:
    if isinstance(r, ChernInvariants):
        return r
    if isinstance(r, HalfPolygon):
        return chern(r)
    inv = getattr(r, "invariants", None)
    if inv is None:
        inv = chern(r.fine_interior)
        try:
            r.invariants = inv
        except AttributeError:
            pass
    return inv


def report_csv(rows: Iterable[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["chi", "count", "c1sq_min", "c1sq_max"])
    for r in rows:
        w.writerow([r.chi, r.count, r.c1sq_min, r.c1sq_max])
    return buf.getvalue()


REFERENCE_LINES = {
    # a * c1sq = b * c2 + c, as (a, b, c)
    "bmy": (1, 3, 0),
    "noether": (5, 1, -36),
    "scott": (7, 2, -96),
    "upper": (2, 1, -42),
}


def geography_points(records: Iterable) -> list[tuple[int, int, int, int, int]]:
    """Distinct ``(chi, c1sq, c2, hollow, lattice)`` tuples, sorted."""
    pts = set()
    for r in records:
        inv = _invariants(r)
        pts.add((inv.chi, inv.c1sq, inv.c2, int(inv.hollow), int(inv.fine_is_lattice)))
    return sorted(pts)


def _points_csv(pts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["chi", "c1sq", "c2", "hollow", "lattice"])
    w.writerows(pts)
    return buf.getvalue()


def geography_csv(records: Iterable) -> str:
    return _points_csv(geography_points(records))


def geography_svg(points, width: int = 800, height: int = 500) -> str:
    """
    Scatter of ``(c2, c1sq)`` with the four reference lines.

    The viewBox is in data units: x is ``c2`` and y is ``-c1sq`` (SVG y grows
    downward), so the picture has ``c1sq`` increasing upward.
    """
    pts = [(p[2], p[1], p[4]) for p in points]
    xmax = max([p[0] for p in pts] + [60]) * 1.05
    ymax = max([p[1] for p in pts] + [10]) * 1.1
    r = xmax / 250
    attrs = 'vector-effect="non-scaling-stroke"'
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 {-ymax:.2f} {xmax:.2f} {ymax:.2f}" '
           f'width="{width}" height="{height}" preserveAspectRatio="none">',
           f'<line x1="0" y1="0" x2="{xmax:.2f}" y2="0" stroke="black" {attrs}/>',
           f'<line x1="0" y1="0" x2="0" y2="{-ymax:.2f}" stroke="black" {attrs}/>']
    colors = {"bmy": "red", "noether": "blue", "scott": "green", "upper": "orange"}
    for name, (a, b, c) in REFERENCE_LINES.items():
        x0, x1 = 0.0, xmax
        y0, y1 = (b * x0 + c) / a, (b * x1 + c) / a
        if y1 > ymax:
            x1, y1 = (a * ymax - c) / b, ymax
        if y0 < 0:
            x0, y0 = -c / b, 0.0
        out.append(f'<line class="{name}" x1="{x0:.2f}" y1="{-y0:.2f}" '
                   f'x2="{x1:.2f}" y2="{-y1:.2f}" stroke="{colors[name]}" {attrs}/>')
    for x, y, lat in pts:
        fill = "black" if lat else "gray"
        out.append(f'<ellipse cx="{x}" cy="{-y}" rx="{r:.3f}" ry="{r * ymax / xmax * width / height:.3f}" '
                   f'fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_geography(records: Iterable, csv_path=None, svg_path=None) -> str:
    """Write the scatter CSV (and optionally an SVG); return the CSV text."""
    pts = geography_points(records)
    text = _points_csv(pts)
    if csv_path is not None:
        with open(csv_path, "w") as f:
            f.write(text)
    if svg_path is not None:
        with open(svg_path, "w") as f:
            f.write(geography_svg(pts))
    return text
