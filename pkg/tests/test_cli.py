"""Command-line interface: exit codes, files written, human output."""

import json

import pytest

from linespace.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerate:
    def test_tetrahedron(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        code, stdout, _ = run(["generate", "tetrahedron", "--out", str(out)], capsys)
        assert code == 0
        data = json.loads(out.read_text())
        assert len(data["lines"]) == 6
        assert len(data["skew_pairs"]) == 3

    def test_pg3_with_sidecar(self, tmp_path, capsys):
        out = tmp_path / "pg2.json"
        code, stdout, _ = run(["generate", "pg3", "--q", "2", "--out", str(out)], capsys)
        assert code == 0
        assert len(json.loads(out.read_text())["lines"]) == 35
        sidecar = tmp_path / "pg2.meta.json"
        assert sidecar.exists()
        assert json.loads(sidecar.read_text())["q"] == 2

    def test_unsupported_field(self, tmp_path, capsys):
        code, _, stderr = run(
            ["generate", "pg3", "--q", "4", "--out", str(tmp_path / "x.json")], capsys
        )
        assert code == 2
        assert "unsupported field" in stderr

    def test_pg3_without_q(self, tmp_path, capsys):
        code, _, stderr = run(
            ["generate", "pg3", "--out", str(tmp_path / "x.json")], capsys
        )
        assert code == 2

    def test_negative_kind(self, tmp_path, capsys):
        out = tmp_path / "n.json"
        code, _, _ = run(["generate", "negative:two_components", "--out", str(out)], capsys)
        assert code == 0
        assert len(json.loads(out.read_text())["lines"]) == 12

    def test_unknown_negative(self, tmp_path, capsys):
        code, _, stderr = run(
            ["generate", "negative:bogus", "--out", str(tmp_path / "x.json")], capsys
        )
        assert code == 2

    def test_unknown_kind(self, tmp_path, capsys):
        code, _, _ = run(["generate", "cube", "--out", str(tmp_path / "x.json")], capsys)
        assert code == 2


@pytest.fixture()
def tetra_file(tmp_path, capsys):
    out = tmp_path / "t.json"
    main(["generate", "tetrahedron", "--out", str(out)])
    capsys.readouterr()
    return out


@pytest.fixture()
def pg2_file(tmp_path, capsys):
    out = tmp_path / "pg2.json"
    main(["generate", "pg3", "--q", "2", "--out", str(out)])
    capsys.readouterr()
    return out


class TestCheck:
    def test_tetra_axioms_exit_one(self, tetra_file, capsys):
        code, stdout, _ = run(["check", str(tetra_file), "--which", "axioms"], capsys)
        assert code == 1
        assert "AXIOM [1]                    FAIL" in stdout
        assert stdout.count("PASS") == 5

    def test_pg2_all_exit_zero(self, pg2_file, capsys):
        code, stdout, _ = run(["check", str(pg2_file), "--which", "all"], capsys)
        assert code == 0
        assert "FAIL" not in stdout and "UNMET" not in stdout

    def test_report_written(self, tetra_file, tmp_path, capsys):
        report = tmp_path / "report.json"
        code, _, _ = run(
            ["check", str(tetra_file), "--which", "axioms", "--report", str(report)],
            capsys,
        )
        assert code == 1
        data = json.loads(report.read_text())
        assert data["format"] == "linespace-report-v1"
        assert len(data["reports"]) == 6

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        code, _, stderr = run(["check", str(bad)], capsys)
        assert code == 2

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["check", str(tmp_path / "nope.json")], capsys)
        assert code == 2

    def test_theorems_only(self, tetra_file, capsys):
        code, stdout, _ = run(["check", str(tetra_file), "--which", "theorems"], capsys)
        assert code == 0  # every verifier passes on the six-line fixture

    def test_vy_only(self, tetra_file, capsys):
        code, stdout, _ = run(["check", str(tetra_file), "--which", "vy"], capsys)
        assert code == 1  # e0 needs three points per line


class TestDerive:
    def test_pg2_model(self, pg2_file, tmp_path, capsys):
        out = tmp_path / "m.json"
        code, stdout, _ = run(["derive", str(pg2_file), "--out", str(out)], capsys)
        assert code == 0
        data = json.loads(out.read_text())
        assert len(data["points"]) == 15
        assert len(data["planes"]) == 15

    def test_tetra_model(self, tetra_file, tmp_path, capsys):
        out = tmp_path / "m.json"
        code, stdout, _ = run(["derive", str(tetra_file), "--out", str(out)], capsys)
        assert code == 0
        data = json.loads(out.read_text())
        assert len(data["points"]) == 4 and len(data["planes"]) == 4

    def test_swapped_seed_exchanges_families(self, tetra_file, tmp_path, capsys):
        m0, m1 = tmp_path / "m0.json", tmp_path / "m1.json"
        run(["derive", str(tetra_file), "--out", str(m0), "--seed", "0,1,0"], capsys)
        run(["derive", str(tetra_file), "--out", str(m1), "--seed", "0,1,1"], capsys)
        d0 = json.loads(m0.read_text())
        d1 = json.loads(m1.read_text())
        assert d0["points"] == d1["planes"]
        assert d0["planes"] == d1["points"]

    def test_underivable_structure(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        main(["generate", "negative:two_components", "--out", str(bad)])
        capsys.readouterr()
        code, stdout, _ = run(["derive", str(bad), "--out", str(tmp_path / "m.json")], capsys)
        assert code == 1
        assert "cannot derive" in stdout

    def test_bad_seed_string(self, tetra_file, tmp_path, capsys):
        code, _, stderr = run(
            ["derive", str(tetra_file), "--out", str(tmp_path / "m.json"), "--seed", "1,2"],
            capsys,
        )
        assert code == 2


class TestDualize:
    def test_involution_byte_identical(self, pg2_file, tmp_path, capsys):
        m = tmp_path / "m.json"
        d = tmp_path / "d.json"
        dd = tmp_path / "dd.json"
        run(["derive", str(pg2_file), "--out", str(m)], capsys)
        assert run(["dualize", str(m), "--out", str(d)], capsys)[0] == 0
        assert run(["dualize", str(d), "--out", str(dd)], capsys)[0] == 0
        assert m.read_bytes() == dd.read_bytes()
        assert m.read_bytes() != d.read_bytes()

    def test_inconsistent_model_rejected(self, tetra_file, tmp_path, capsys):
        m = tmp_path / "m.json"
        run(["derive", str(tetra_file), "--out", str(m)], capsys)
        data = json.loads(m.read_text())
        data["planes"] = data["planes"][:-1]
        m.write_text(json.dumps(data))
        code, stdout, _ = run(["dualize", str(m), "--out", str(tmp_path / "d.json")], capsys)
        assert code == 1
        assert "failed verification" in stdout


class TestInfo:
    def test_tetra_info(self, tetra_file, capsys):
        code, stdout, _ = run(["info", str(tetra_file)], capsys)
        assert code == 0
        assert "lines:           6" in stdout
        assert "skew pairs:      3" in stdout
        assert "points:          4" in stdout

    def test_pg2_info(self, pg2_file, capsys):
        code, stdout, _ = run(["info", str(pg2_file)], capsys)
        assert code == 0
        assert "lines:           35" in stdout
        assert "perp size:       min 19, max 19" in stdout

    def test_underivable_info_still_exits_zero(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        main(["generate", "negative:no_skew_anywhere", "--out", str(bad)])
        capsys.readouterr()
        code, stdout, _ = run(["info", str(bad)], capsys)
        assert code == 0
        assert "not derivable" in stdout

    def test_empty_file_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "empty.json"
        bad.write_text("")
        code, _, _ = run(["info", str(bad)], capsys)
        assert code == 2


class TestUsage:
    def test_no_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_bad_which(self, tetra_file, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["check", str(tetra_file), "--which", "everything"])
        assert exc.value.code == 2
