"""
Acceptance suite: one test per criterion, each adding a PASS/FAIL line to
the summary printed at the end of the pytest run.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time

import pytest

from finew2.canonical import canonical_form, canonical_form_half, canonical_key
from finew2.classify import bases, classify, classify_range, hat_decomposition
from finew2.enumeration import brute_force_polygons, enumerate_polygons
from finew2.fine import embed_middle, fbar, fbar_via_support, max_half_polygon, pyramid_oracle
from finew2.geography import check_inequalities, chern, report
from finew2.io import import_polygons
from finew2.lattice import AffineMap, HalfPolygon, Polygon, apply_map, random_unimodular

from conftest import DATA, acceptance_line

COUNTS = {2: 12, 3: 17, 4: 48, 5: 86, 6: 177, 7: 279, 8: 504, 9: 768, 10: 1222}
RANGES = {2: (1, 4), 3: (2, 6), 4: (4, 10), 5: (6, 12), 6: (8, 17),
          7: (10, 19), 8: (12, 24), 9: (14, 26), 10: (16, 31)}
TIME_LIMIT = 600.0


def verdict(n, ok, detail):
    acceptance_line(n, ok, detail)
    assert ok, detail


@pytest.fixture(scope="module")
def full_run():
    t = time.perf_counter()
    recs = {g: classify(g, workers=1) for g in COUNTS}
    return recs, time.perf_counter() - t


def test_criterion_1_counts(full_run):
    recs, elapsed = full_run
    got = {g: len(recs[g]) for g in COUNTS}
    ok = got == COUNTS and elapsed < TIME_LIMIT
    verdict(1, ok, f"counts g=2..10 {list(got.values())} (total {sum(got.values())}), "
                   f"{elapsed:.0f}s single worker, limit {TIME_LIMIT:.0f}s")


def test_criterion_2_c1sq_ranges(full_run):
    recs, _ = full_run
    bad = []
    for g in COUNTS:
        (row,) = report(recs[g])
        vals = {chern(r.fine_interior).c1sq for r in recs[g]}
        lo, hi = RANGES[g]
        if (row.c1sq_min, row.c1sq_max) != (lo, hi) or vals != set(range(lo, hi + 1)):
            bad.append(g)
    verdict(2, not bad, "every c1^2 interval attained for g=2..10" if not bad else f"mismatch at g={bad}")


def test_criterion_3_figures(full_run):
    recs, _ = full_run
    res = []
    for g in (2, 3):
        golden = import_polygons(DATA / f"figure_g{g}.jsonl")
        res.append(len(golden) == COUNTS[g]
                   and {canonical_key(P) for P in golden} == {r.key for r in recs[g]})
    verdict(3, all(res), "classify(2), classify(3) equal the 12 and 17 figure polygons up to equivalence")


def test_criterion_4_oracle(full_run):
    recs, _ = full_run
    rng = random.Random(4)
    small = [r for g in (2, 3, 4) for r in recs[g]]
    large = rng.sample([r for g in range(5, 11) for r in recs[g]], 120)
    bad = 0
    for r in small + large:
        F = r.fine_interior
        P0 = max_half_polygon(F)
        if pyramid_oracle(P0) != embed_middle(F) or fbar(P0) != fbar_via_support(P0):
            bad += 1
    verdict(4, bad == 0, f"3D oracle and support-set path agree on {len(small)} + {len(large)} records, "
                         f"{bad} mismatches")


def _structure_ok(F: HalfPolygon) -> bool:
    D = F.doubled
    if any(not isinstance(c, int) for v in D.vertices for c in v):
        return False
    for a, b in D.edges():
        if not any(x % 2 == 0 and y % 2 == 0 for x, y in Polygon([a, b]).lattice_points()):
            return False
    base = Polygon(F.lattice_points())
    if any(D.contains((2 * x, 2 * y), strict=True) for x, y in base.vertices):
        return False
    if hat_decomposition(F) is None:
        return False
    inv = chern(F)
    rep = check_inequalities(inv)
    return rep.mod12 and rep.bmy and rep.noether and D.normalized_area() % 2 == 0


def test_criterion_5_structure(full_run):
    recs, _ = full_run
    every = [r for g in COUNTS for r in recs[g]]
    bad = [r for r in every if not _structure_ok(r.fine_interior)]
    verdict(5, not bad, f"{len(every)} records: half-integral, edges meet M, base vertices on boundary, "
                        f"hat decomposition, mod 12, BMY, Noether, 2Vol integral; {len(bad)} failures")


def test_criterion_6_enumeration():
    t = time.perf_counter()
    ok = all({canonical_key(P) for P in enumerate_polygons(g)}
             == {canonical_key(P) for P in brute_force_polygons(g, g)} for g in (3, 4, 5, 6))
    elapsed = time.perf_counter() - t
    ok = ok and elapsed < 60
    verdict(6, ok, f"enumerate_polygons equals brute force for g=3..6 in {elapsed:.1f}s")


def test_criterion_7_canonical():
    rng = random.Random(7)
    n = bad = 0
    while n < 1000:
        P = Polygon([(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(rng.randint(3, 8))])
        if P.dim < 1:
            continue
        n += 1
        T = AffineMap(random_unimodular(rng), (rng.randint(-30, 30), rng.randint(-30, 30)))
        if n % 2:
            Q = HalfPolygon(P)
            C = canonical_form_half(Q)[0]
            same = canonical_key(apply_map(T, Q)) == canonical_key(Q) and canonical_form_half(C)[0] == C
        else:
            C = canonical_form(P)[0]
            same = canonical_key(apply_map(T, P)) == canonical_key(P) and canonical_form(C)[0] == C
        bad += not same
    verdict(7, bad == 0, f"{n} random (polygon, map) pairs keep their key, forms idempotent; {bad} failures")


def test_criterion_8_determinism(tmp_path):
    outs = {}
    for w in (1, 4, 16):
        p = tmp_path / f"w{w}.jsonl"
        list(classify_range(2, 6, workers=w, out_path=p))
        outs[w] = p.read_bytes()
    ck, resumed = tmp_path / "ck", tmp_path / "resumed.jsonl"
    seen = []

    def kill(g, key):
        seen.append(g)
        if g == 6 and seen.count(6) == len(bases(6)) // 2:
            raise KeyboardInterrupt

    try:
        list(classify_range(2, 6, checkpoint_dir=ck, workers=4, out_path=resumed, on_base_done=kill))
    except KeyboardInterrupt:
        pass
    killed = not resumed.exists()
    list(classify_range(2, 6, checkpoint_dir=ck, workers=4, out_path=resumed))
    ok = killed and outs[1] == outs[4] == outs[16] == resumed.read_bytes()
    n = outs[1].count(b"\n")
    verdict(8, ok, f"classify_range(2, 6): {n} records byte-identical for 1, 4, 16 workers and after kill/resume")
