import time

import pytest

from finew2.canonical import canonical_key
from finew2.enumeration import (
    augment,
    brute_force_polygons,
    enumerate_polygons,
    polygon_frontiers,
    read_frontier,
)
from finew2.lattice import Polygon

UNIT = Polygon([(0, 0), (1, 0), (0, 1)])
SQUARE = Polygon([(0, 0), (1, 0), (0, 1), (1, 1)])


def keys(polys):
    return {canonical_key(P) for P in polys}


def test_g3_single_triangle():
    polys = enumerate_polygons(3)
    assert len(polys) == 1 and canonical_key(polys[0]) == canonical_key(UNIT)


def test_g4_has_three_classes():
    # square, 4-point triangle, and the triangle with one interior point
    expected = keys([SQUARE, Polygon([(0, 0), (2, 0), (0, 1)]), Polygon([(-1, -1), (1, 0), (0, 1)])])
    assert keys(enumerate_polygons(4)) == expected


@pytest.mark.parametrize("g", [3, 4, 5, 6, 7])
def test_postconditions(g):
    polys = enumerate_polygons(g)
    assert all(P.dim == 2 and P.lattice_count() == g for P in polys)
    assert len(keys(polys)) == len(polys)
    assert [canonical_key(P) for P in polys] == sorted(keys(polys))


def test_small_g_rejected():
    with pytest.raises(ValueError):
        enumerate_polygons(2)


def test_augment_segment_gives_triangle():
    assert canonical_key(UNIT) in keys(augment(Polygon([(0, 0), (1, 0)])))


def test_augment_unit_triangle():
    out = keys(augment(UNIT))
    assert canonical_key(SQUARE) in out
    assert canonical_key(Polygon([(0, 0), (2, 0), (0, 1)])) in out


def test_augment_square_one_new_point():
    out = keys(augment(SQUARE))
    P22 = Polygon([(0, 0), (1, 0), (0, 1), (2, 2)])
    assert P22.lattice_count() == 5
    assert canonical_key(P22) in out
    P33 = Polygon([(0, 0), (1, 0), (0, 1), (3, 3)])
    assert P33.lattice_count() > 5
    assert all(Q.lattice_count() == 5 for Q in augment(SQUARE))


@pytest.mark.parametrize("g,box", [(3, 4), (4, 4), (5, 5), (6, 6)])
def test_matches_brute_force(g, box):
    t = time.time()
    assert keys(enumerate_polygons(g)) == keys(brute_force_polygons(g, box))
    assert time.time() - t < 60


def test_brute_force_counts():
    assert len(brute_force_polygons(3, 4)) == 1
    assert len(brute_force_polygons(4, 4)) == 3
    assert len(brute_force_polygons(5, 5)) == len(enumerate_polygons(5))


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_polygons(9, 4)
    with pytest.raises(ValueError):
        brute_force_polygons(5, 11)


@pytest.mark.parametrize("g", [4, 5, 6, 7])
def test_every_class_has_a_predecessor(g):
    lower = keys(polygon_frontiers(g - 1)[g - 1])
    for P in enumerate_polygons(g):
        pts = set(P.lattice_points())
        preds = []
        for v in P.vertices:
            Q = Polygon(pts - {v})
            if Q.lattice_count() == g - 1:
                preds.append(canonical_key(Q))
        assert any(k in lower for k in preds)


def test_frontier_files_resume(tmp_path):
    first = polygon_frontiers(6, tmp_path)
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == [f"frontier_{n:03d}.txt" for n in range(2, 7)]
    lines = (tmp_path / "frontier_006.txt").read_text().split()
    assert lines == sorted(lines)
    assert keys(read_frontier(tmp_path / "frontier_006.txt")) == keys(first[6])
    again = polygon_frontiers(7, tmp_path)
    assert keys(P for P in again[7] if P.dim == 2) == keys(enumerate_polygons(7))
