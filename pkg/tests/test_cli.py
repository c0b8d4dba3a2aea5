import json
import random
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from finew2.canonical import canonical_key
from finew2.cli import EXIT_CHECKPOINT, EXIT_FAIL, EXIT_INPUT, EXIT_OK, RunConfig, main
from finew2.fine import fine_interior_test
from finew2.io import (
    PolygonImportError,
    export_polygons,
    import_polygons,
    parse_line,
    parse_vertices,
    read_parsed,
)
from finew2.lattice import HalfPolygon

from conftest import classified


@pytest.fixture(scope="module")
def g2to4(tmp_path_factory):
    p = tmp_path_factory.mktemp("cli") / "g2to4.jsonl"
    assert main(["classify", "--min-g", "2", "--max-g", "4", "--no-checkpoint", "--out", str(p)]) == 0
    return p


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestImport:
    def test_small_hat(self, tmp_path):
        (P,) = import_polygons(write(tmp_path, "a.txt", "[[0,0],[2,0],[1,1]]\n"))
        hat = HalfPolygon.from_points([(0, 0), (1, 0), (Fr(1, 2), Fr(1, 2))])
        assert canonical_key(P) == canonical_key(hat)

    def test_formats(self):
        assert parse_vertices("0 0 2 0 1 1")[0] == [(0, 0), (2, 0), (1, 1)]
        assert parse_vertices("0,0, 2,0, 1,1")[0] == [(0, 0), (2, 0), (1, 1)]
        pts, data = parse_vertices('{"g": 2, "vertices2x": [[0,0],[2,0],[1,1]]}')
        assert pts == [(0, 0), (2, 0), (1, 1)] and data["g"] == 2

    @pytest.mark.parametrize("line,reason", [
        ("[[0,0],[4,0],[1,1],[0,4]]", "not convex"),
        ("[[0,0],[2,0]]", "fewer than three"),
        ("[[0,0],[2,0],[4,0]]", "collinear"),
        ("[[0,0],[2,0],[2,0],[1,1]]", "repeated"),
        ("[[0,0],[2,0],[1,0.5]]", "half-integral"),
        ("0 0 2", "odd number"),
        ('{"vertices": []}', "vertices2x"),
    ])
    def test_rejections(self, line, reason):
        with pytest.raises(ValueError, match=reason):
            parse_line(line)

    def test_error_report_lists_lines(self, tmp_path):
        p = write(tmp_path, "b.txt", "# comment\n[[0,0],[2,0],[1,1]]\n\n[[0,0],[4,0],[1,1],[0,4]]\n")
        ok, errs = read_parsed(p)
        assert len(ok) == 1 and [e.line for e in errs] == [4]
        with pytest.raises(PolygonImportError) as ei:
            import_polygons(p)
        assert "line 4" in str(ei.value)

    def test_round_trip(self, tmp_path):
        polys = [r.fine_interior for r in classified(3)]
        text = export_polygons(polys)
        p = write(tmp_path, "c.jsonl", text)
        assert export_polygons(import_polygons(p)) == text
        export_polygons(polys, tmp_path / "d.jsonl")
        assert (tmp_path / "d.jsonl").read_text() == text


class TestCommands:
    def test_classify_two_three(self, capsys):
        assert main(["classify", "--min-g", "2", "--max-g", "3", "--no-checkpoint"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 29
        d = json.loads(lines[0])
        assert set(d) == {"g", "vertices2x", "base_key", "hats"}

    def test_verify_ok(self, g2to4):
        assert main(["verify", str(g2to4)]) == EXIT_OK

    def test_report(self, g2to4, capsys):
        assert main(["report", str(g2to4)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "chi,count,c1sq_min,c1sq_max", "2,12,1,4", "3,17,2,6", "4,48,4,10"]

    def test_report_jsonl(self, g2to4, capsys):
        main(["report", str(g2to4), "--format", "jsonl"])
        rows = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
        assert rows[0] == {"chi": 2, "count": 12, "c1sq_min": 1, "c1sq_max": 4, "missing": []}

    def test_invariants(self, g2to4, tmp_path):
        out = tmp_path / "inv.csv"
        assert main(["invariants", str(g2to4), "--format", "csv", "--out", str(out)]) == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "vertices2x,chi,c1sq,c2,hollow,lattice" and len(rows) == 78
        assert main(["invariants", str(g2to4), "--out", str(out)]) == 0
        d = json.loads(out.read_text().splitlines()[0])
        assert d["c1sq"] + d["c2"] == 12 * (1 + d["chi"])

    def test_geography(self, g2to4, tmp_path, capsys):
        svg = tmp_path / "g.svg"
        assert main(["geography", str(g2to4), "--svg", str(svg)]) == 0
        assert capsys.readouterr().out.startswith("chi,c1sq,c2,hollow,lattice\n")
        assert svg.read_text().startswith("<svg")

    def test_enumerate(self, capsys):
        assert main(["enumerate", "--g", "4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3 and all(json.loads(l)["g"] == 4 for l in lines)
        main(["enumerate", "--min-g", "3", "--max-g", "4", "--format", "csv"])
        assert len(capsys.readouterr().out.splitlines()) == 4

    def test_workers_flag(self, tmp_path):
        outs = []
        for w in ("1", "4"):
            p = tmp_path / f"{w}.jsonl"
            main(["classify", "--min-g", "2", "--max-g", "5", "--workers", w, "--no-checkpoint", "--out", str(p)])
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]

    def test_env_workers(self, monkeypatch, tmp_path, g2to4):
        monkeypatch.setenv("FINEW2_WORKERS", "2")
        p = tmp_path / "e.jsonl"
        assert main(["classify", "--min-g", "2", "--max-g", "4", "--no-checkpoint", "--out", str(p)]) == 0
        assert p.read_bytes() == g2to4.read_bytes()

    def test_checkpoint_default_and_dir(self, tmp_path, monkeypatch, g2to4):
        monkeypatch.chdir(tmp_path)
        out = tmp_path / "o.jsonl"
        assert main(["classify", "--min-g", "2", "--max-g", "4", "--out", str(out)]) == 0
        assert (tmp_path / ".finew2-checkpoints" / "g_004" / "records.jsonl").exists()
        assert out.read_bytes() == g2to4.read_bytes()


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        assert main(["verify", str(tmp_path / "nope.jsonl")]) == EXIT_INPUT

    def test_malformed_line(self, tmp_path, capsys):
        p = write(tmp_path, "bad.txt", "[[0,0],[2,0],[1,1]]\n[[0,0],[4,0],[1,1],[0,4]]\n")
        assert main(["verify", str(p)]) == EXIT_INPUT
        assert "line 2" in capsys.readouterr().err

    def test_failing_row(self, tmp_path, capsys):
        p = write(tmp_path, "f.txt", "[[0,0],[2,0],[1,5]]\n[[0,0],[2,0],[1,1]]\n")
        assert main(["verify", str(p)]) == EXIT_FAIL
        assert "line 1" in capsys.readouterr().err
        assert main(["verify", str(p), "--lenient"]) == EXIT_OK

    def test_wrong_g_field(self, tmp_path):
        p = write(tmp_path, "w.jsonl", '{"g": 3, "vertices2x": [[0,0],[2,0],[1,1]]}\n')
        assert main(["verify", str(p)]) == EXIT_FAIL

    def test_corrupt_checkpoint(self, tmp_path):
        ck = tmp_path / "ck"
        assert main(["classify", "--g", "3", "--checkpoint-dir", str(ck), "--out", str(tmp_path / "x")]) == 0
        gdir = ck / "g_004"
        gdir.mkdir()
        (gdir / "part.jsonl").write_text("garbage\n{}\n")
        rc = main(["classify", "--g", "4", "--checkpoint-dir", str(ck), "--out", str(tmp_path / "y")])
        assert rc == EXIT_CHECKPOINT

    def test_bad_config(self):
        with pytest.raises(SystemExit):
            main(["classify", "--min-g", "5", "--max-g", "3"])
        with pytest.raises(ValueError):
            RunConfig("classify", g_min=2, g_max=3, workers=0).validate()

    def test_console_module(self, g2to4):
        r = subprocess.run([sys.executable, "-m", "finew2.cli", "verify", str(g2to4)],
                           capture_output=True, text=True)
        assert r.returncode == 0


class TestMutationFuzz:
    def test_half_step_perturbations(self, tmp_path, capsys):
        rng = random.Random(2024)
        pool = [r for g in (2, 3, 4, 5) for r in classified(g)]
        known = {g: {r.key for r in classified(g)} for g in (2, 3, 4, 5)}
        lines, accepted = [], 0
        for _ in range(300):
            r = rng.choice(pool)
            d = r.to_json()
            vs = [tuple(v) for v in d["vertices2x"]]
            i = rng.randrange(len(vs))
            dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
            vs[i] = (vs[i][0] + dx, vs[i][1] + dy)
            d["vertices2x"] = [list(v) for v in vs]
            try:
                P = parse_line(json.dumps(d)).polygon
            except ValueError:
                continue
            lines.append(json.dumps(d))
            if fine_interior_test(P) and P.lattice_count() == r.g:
                # an accepted mutation is itself a Fine interior found by the pipeline
                accepted += 1
                assert canonical_key(P) in known[r.g]
        p = write(tmp_path, "mut.jsonl", "\n".join(lines) + "\n")
        capsys.readouterr()
        assert main(["verify", str(p)]) == EXIT_FAIL
        rejected = len(capsys.readouterr().err.splitlines())
        assert len(lines) > 150
        assert rejected + accepted == len(lines)
        assert rejected / len(lines) > 0.85
