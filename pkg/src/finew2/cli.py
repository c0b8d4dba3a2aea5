"""Command line front end: ``finew2 <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .classify import CheckpointError, classify_range
from .canonical import canonical_key
from .enumeration import enumerate_polygons
from .fine import fine_interior_test
from .geography import chern, emit_geography, report, report_csv
from .io import read_parsed

log = logging.getLogger("finew2")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CHECKPOINT = 0, 1, 2, 3
DEFAULT_CHECKPOINT_DIR = ".finew2-checkpoints"


@dataclass
class RunConfig:
    command: str
    g_min: int = 2
    g_max: int = 2
    workers: int = 1
    checkpoint_dir: Optional[str] = DEFAULT_CHECKPOINT_DIR
    out_path: Optional[str] = None
    format: str = "jsonl"
    input_path: Optional[str] = None
    lenient: bool = False
    svg_path: Optional[str] = None

    def validate(self):
        if self.command in ("classify", "enumerate") and not 2 <= self.g_min <= self.g_max:
            raise ValueError("need 2 <= min-g <= max-g")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _env_workers() -> int:
    try:
        return max(1, int(os.environ.get("FINEW2_WORKERS", "1")))
    except ValueError:
        return 1


def _writer(path):
    return open(path, "w") if path else sys.stdout


def _load(cfg) -> Optional[list]:
    ok, errs = read_parsed(cfg.input_path)
    if errs:
        for e in errs:
            print(f"{cfg.input_path}: {e}", file=sys.stderr)
        return None
    return ok


def _cmd_enumerate(cfg) -> int:
    out = _writer(cfg.out_path)
    try:
        for g in range(cfg.g_min, cfg.g_max + 1):
            polys = enumerate_polygons(g) if g >= 3 else []
            log.info("g=%d: %d lattice polygons", g, len(polys))
            for P in polys:
                if cfg.format == "csv":
                    out.write(f"{g}," + " ".join(f"{x} {y}" for x, y in P.vertices) + "\n")
                else:
                    out.write(json.dumps({"g": g, "vertices": [list(v) for v in P.vertices],
                                          "key": canonical_key(P).hex()},
                                         separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_classify(cfg) -> int:
    counts = {}
    try:
        # with --out the file is written atomically once all records exist
        for r in classify_range(cfg.g_min, cfg.g_max, cfg.checkpoint_dir,
                                cfg.workers, out_path=cfg.out_path):
            counts[r.g] = counts.get(r.g, 0) + 1
            if not cfg.out_path:
                sys.stdout.write(r.to_line() + "\n")
    except CheckpointError as e:
        print(f"corrupt checkpoint: {e}", file=sys.stderr)
        return EXIT_CHECKPOINT
    for g in sorted(counts):
        log.info("g=%d: %d Fine interiors", g, counts[g])
    return EXIT_OK


def _cmd_verify(cfg) -> int:
    rows = _load(cfg)
    if rows is None:
        return EXIT_INPUT
    bad = 0
    for p in rows:
        F = p.polygon
        reason = None
        if not fine_interior_test(F):
            reason = "not a Fine interior"
        elif "g" in p.data and F.lattice_count() != p.data["g"]:
            reason = f"has {F.lattice_count()} lattice points, record says {p.data['g']}"
        if reason:
            bad += 1
            print(f"{cfg.input_path}: line {p.line}: {reason}", file=sys.stderr)
    log.info("verified %d polygons, %d failed", len(rows), bad)
    return EXIT_OK if bad == 0 or cfg.lenient else EXIT_FAIL


def _cmd_invariants(cfg) -> int:
    rows = _load(cfg)
    if rows is None:
        return EXIT_INPUT
    out = _writer(cfg.out_path)
    try:
        if cfg.format == "csv":
            out.write("vertices2x,chi,c1sq,c2,hollow,lattice\n")
        for p in rows:
            inv = chern(p.polygon)
            if cfg.format == "csv":
                verts = " ".join(f"{x} {y}" for x, y in p.polygon.doubled.vertices)
                out.write(f"{verts},{inv.chi},{inv.c1sq},{inv.c2},"
                          f"{int(inv.hollow)},{int(inv.fine_is_lattice)}\n")
            else:
                d = dict(p.data) or {"vertices2x": [list(v) for v in p.polygon.doubled.vertices]}
                d.update(chi=inv.chi, c1sq=inv.c1sq, c2=inv.c2,
                         hollow=inv.hollow, lattice=inv.fine_is_lattice)
                out.write(json.dumps(d, separators=(",", ":")) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _cmd_report(cfg) -> int:
    rows = _load(cfg)
    if rows is None:
        return EXIT_INPUT
    table = report(p.polygon for p in rows)
    out = _writer(cfg.out_path)
    try:
        if cfg.format == "jsonl":
            for r in table:
                out.write(json.dumps({"chi": r.chi, "count": r.count, "c1sq_min": r.c1sq_min,
                                      "c1sq_max": r.c1sq_max, "missing": list(r.missing)},
                                     separators=(",", ":")) + "\n")
        else:
            out.write(report_csv(table))
    finally:
        if out is not sys.stdout:
            out.close()
    for r in table:
        if r.missing:
            log.warning("chi=%d: c1sq values %s not attained", r.chi, list(r.missing))
    return EXIT_OK


def _cmd_geography(cfg) -> int:
    rows = _load(cfg)
    if rows is None:
        return EXIT_INPUT
    polys = [p.polygon for p in rows]
    if cfg.out_path:
        emit_geography(polys, cfg.out_path, cfg.svg_path)
    else:
        sys.stdout.write(emit_geography(polys, None, cfg.svg_path))
    return EXIT_OK


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "invariants": _cmd_invariants,
    "report": _cmd_report,
    "geography": _cmd_geography,
}


def run(cfg: RunConfig) -> int:
    cfg.validate()
    return COMMANDS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="finew2", description=(
        "Enumerate and check planar Fine interiors of width-two lattice polytopes in R^3."))
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def common_out(p, formats=("jsonl", "csv"), default="jsonl"):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=default)

    p = sub.add_parser("enumerate", help="lattice polygons with g lattice points")
    p.add_argument("--g", type=int, help="shorthand for --min-g G --max-g G")
    p.add_argument("--min-g", type=int)
    p.add_argument("--max-g", type=int)
    common_out(p)

    p = sub.add_parser("classify", help="Fine interiors with min-g..max-g lattice points")
    p.add_argument("--g", type=int)
    p.add_argument("--min-g", type=int)
    p.add_argument("--max-g", type=int)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $FINEW2_WORKERS or 1)")
    p.add_argument("--checkpoint-dir", default=DEFAULT_CHECKPOINT_DIR)
    p.add_argument("--no-checkpoint", action="store_true")
    common_out(p, formats=("jsonl",))

    p = sub.add_parser("verify", help="re-test every polygon of a file")
    p.add_argument("input")
    p.add_argument("--lenient", action="store_true", help="exit 0 even if some rows fail")

    p = sub.add_parser("invariants", help="append Chern numbers")
    p.add_argument("input")
    common_out(p)

    p = sub.add_parser("report", help="per-chi counts and c1^2 ranges")
    p.add_argument("input")
    common_out(p, default="csv")

    p = sub.add_parser("geography", help="(c2, c1^2) scatter as CSV and optional SVG")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--format", choices=("csv",), default="csv")
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(args.command)
    if args.command in ("enumerate", "classify"):
        lo = args.min_g if args.min_g is not None else args.g
        hi = args.max_g if args.max_g is not None else (args.g if args.g is not None else lo)
        if lo is None:
            raise ValueError("give --g or --min-g/--max-g")
        cfg.g_min, cfg.g_max = lo, hi
    if args.command == "classify":
        cfg.workers = args.workers if args.workers is not None else _env_workers()
        cfg.checkpoint_dir = None if args.no_checkpoint else args.checkpoint_dir
    cfg.out_path = getattr(args, "out", None)
    cfg.format = getattr(args, "format", "jsonl")
    cfg.input_path = getattr(args, "input", None)
    cfg.lenient = getattr(args, "lenient", False)
    cfg.svg_path = getattr(args, "svg", None)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        cfg.validate()
    except ValueError as e:
        ap.error(str(e))
    if cfg.input_path is not None and not Path(cfg.input_path).exists():
        print(f"no such file: {cfg.input_path}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return run(cfg)
    except BrokenPipeError:
        # output piped into e.g. head
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
