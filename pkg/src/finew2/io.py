"""Reading and writing polygon datasets in doubled integer coordinates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .canonical import canonical_form_half
from .lattice import HalfPolygon, Polygon, _hull


@dataclass(frozen=True)
class LineError:
    line: int
    reason: str

    def __str__(self):
        return f"line {self.line}: {self.reason}"


class PolygonImportError(ValueError):
    def __init__(self, errors: list[LineError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors[:5]))


@dataclass
class ParsedLine:
    line: int
    polygon: HalfPolygon
    data: dict  # the JSON object, or {} for plain vertex lists


def _as_int(x):
    if isinstance(x, bool):
        raise ValueError(f"not an integer: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise ValueError(f"coordinate {x!r} is not half-integral")


def parse_vertices(text: str) -> tuple[list[tuple[int, int]], dict]:
    """Doubled vertices from a JSONL line or a whitespace-separated list."""
    s = text.strip()
    data: dict = {}
    if s.startswith("{"):
        data = json.loads(s)
        if not isinstance(data, dict) or "vertices2x" not in data:
            raise ValueError("object without 'vertices2x'")
        raw = data["vertices2x"]
    elif s.startswith("["):
        raw = json.loads(s)
    else:
        flat = s.replace(",", " ").split()
        if len(flat) % 2:
            raise ValueError("odd number of coordinates")
        raw = [flat[i:i + 2] for i in range(0, len(flat), 2)]
    if not isinstance(raw, list) or not all(isinstance(p, (list, tuple)) and len(p) == 2 for p in raw):
        raise ValueError("expected a list of [x, y] pairs")
    return [(_as_int(x), _as_int(y)) for x, y in raw], data


def validate_vertices(pts: list[tuple[int, int]]) -> HalfPolygon:
    """The polygon with these doubled vertices; they must be distinct and in convex position."""
    if len(pts) < 3:
        raise ValueError("fewer than three vertices")
    if len(set(pts)) != len(pts):
        raise ValueError("repeated vertex")
    hull = _hull(sorted(pts))
    if len(hull) < 3:
        raise ValueError("degenerate (collinear) vertices")
    if len(hull) != len(pts):
        missing = sorted(set(pts) - set(hull))
        raise ValueError(f"not convex: {missing} not a vertex of the hull")
    return HalfPolygon(Polygon._raw(hull))


def parse_line(text: str, lineno: int = 0) -> ParsedLine:
    pts, data = parse_vertices(text)
    return ParsedLine(lineno, validate_vertices(pts), data)


def iter_lines(path) -> Iterable[tuple[int, str]]:
    with open(path) as f:
        for n, line in enumerate(f, 1):
            if line.strip() and not line.lstrip().startswith("#"):
                yield n, line


def read_parsed(path) -> tuple[list[ParsedLine], list[LineError]]:
    ok, errs = [], []
    for n, line in iter_lines(path):
        try:
            ok.append(parse_line(line, n))
        except (ValueError, TypeError) as e:
            errs.append(LineError(n, str(e)))
    return ok, errs


def import_polygons(path) -> list[HalfPolygon]:
    """
    Parse a file of doubled vertex lists and return canonical HalfPolygons.

    Raises PolygonImportError listing every bad line.
    """
    ok, errs = read_parsed(path)
    if errs:
        raise PolygonImportError(errs)
    return [canonical_form_half(p.polygon)[0] for p in ok]


def export_polygons(polys: Iterable[HalfPolygon], path: Optional[str] = None) -> str:
    """One ``{"vertices2x": ...}`` line per polygon (canonicalized)."""
    lines = []
    for P in polys:
        C = canonical_form_half(P)[0]
        lines.append(json.dumps({"vertices2x": [list(v) for v in C.doubled.vertices]},
                                separators=(",", ":")))
    text = "".join(s + "\n" for s in lines)
    if path is not None:
        with open(path, "w") as f:
            f.write(text)
    return text
