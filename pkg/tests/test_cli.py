import csv
import json

import pytest

from src.cli import EXIT_DIVERGENT, EXIT_FAILS, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _csv(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


class TestTransform:
    def test_example1_super_equals_g(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "transform", "--kind", "super", "--catalog", "example1_A",
            "--n", "1", "--step", "1", "--count", "40", "--levels", "1", "--exact", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        rows = _csv(tmp_path / "example1_A_super_level1.csv")
        assert list(rows[0]) == ["x1", "A", "Astar"]
        by_x = {row["x1"]: row["Astar"] for row in rows}
        assert by_x["8"] == "8"
        assert by_x["30"] == "65/2"
        assert by_x["40"] == "45"
        document = json.loads((tmp_path / "example1_A_super.json").read_text())
        assert document["divergence_flag"] is False
        assert json.loads(out) == document

    def test_sqrt_diverges(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "transform", "--kind", "super", "--fn", "x1^0.5",
            "--n", "1", "--step", "0.25", "--count", "16", "--levels", "4", "--out", str(tmp_path),
        )
        assert code == EXIT_DIVERGENT
        assert json.loads(out)["divergence_flag"] is True
        assert len(list(tmp_path.glob("*_level*.csv"))) == 4

    def test_linear_sub_is_identity(self, capsys, tmp_path):
        code, _, _ = _run(
            capsys, "transform", "--kind", "sub", "--catalog", "linear", "--param", "c=2",
            "--n", "1", "--step", "0.5", "--count", "8", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        for row in _csv(tmp_path / "linear_sub_level1.csv"):
            assert float(row["Asub"]) == float(row["A"])

    def test_pl_file(self, capsys, tmp_path):
        spec = tmp_path / "ramp.json"
        spec.write_text(json.dumps({"knots": [["0", "0"], ["2", "1"]], "tail_slope": "2"}))
        code, out, _ = _run(
            capsys, "transform", "--kind", "super", "--pl", str(spec),
            "--step", "1", "--count", "4", "--exact", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        assert (tmp_path / "ramp_super_level1.csv").exists()
        assert json.loads(out)["exact"] is True

    def test_outputs_are_deterministic(self, capsys, tmp_path):
        argv = ["transform", "--kind", "sub", "--catalog", "power(2)", "--step", "0.5", "--count", "6", "--levels", "2"]
        _run(capsys, *argv, "--out", str(tmp_path / "a"))
        _run(capsys, *argv, "--out", str(tmp_path / "b"))
        for name in ("power_2_sub_level1.csv", "power_2_sub_level2.csv", "power_2_sub.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    @pytest.mark.parametrize(
        "argv",
        [
            ["transform", "--kind", "super", "--fn", "x1 +", "--count", "4"],
            ["transform", "--kind", "super", "--fn", "x3", "--count", "4"],
            ["transform", "--kind", "super", "--catalog", "skew_quadratic", "--n", "2", "--count", "4"],
            ["transform", "--kind", "super", "--fn", "x1^0.5", "--count", "4", "--exact"],
            ["transform", "--kind", "super", "--fn", "1e400*x1", "--count", "4"],
            ["transform", "--kind", "super", "--catalog", "nope", "--count", "4"],
            ["transform", "--kind", "super", "--fn", "x1", "--catalog", "sqrt", "--count", "4"],
            ["transform", "--kind", "super", "--pl", "missing.json", "--count", "4"],
            ["transform", "--kind", "diagonal", "--fn", "x1"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors(self, capsys, tmp_path, argv):
        with_out = argv + ["--out", str(tmp_path)] if argv[0] == "transform" else argv
        try:
            code = main(with_out)
        except SystemExit as e:
            code = e.code
        assert code == EXIT_USAGE
        assert capsys.readouterr().err

    def test_grid_cap(self, capsys, tmp_path, monkeypatch):
        from src import config

        monkeypatch.setattr(config, "MAX_GRID_POINTS", 10)
        code, _, err = _run(capsys, "transform", "--kind", "super", "--fn", "x1", "--count", "40", "--out", str(tmp_path))
        assert code == EXIT_USAGE
        assert "limit" in err


class TestCheck:
    def test_product_dirconvex(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "check", "--prop", "dirconvex", "--catalog", "product_minus_one",
            "--n", "2", "--step", "0.5", "--count", "6", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        assert json.loads(out)["verdict"] == "holds"

    def test_skew_quadratic_super_fails(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "check", "--prop", "super", "--catalog", "skew_quadratic",
            "--n", "2", "--step", "1", "--count", "4", "--exact", "--out", str(tmp_path),
        )
        assert code == EXIT_FAILS
        witness = json.loads(out)["witness"]
        assert witness["indices"] == [[1, 0], [0, 1], [1, 1]]
        assert witness["slack"] == "2"
        assert (tmp_path / "skew_quadratic_check_super.json").exists()

    def test_example1_f_not_linear(self, capsys, tmp_path):
        code, _, _ = _run(
            capsys, "check", "--prop", "linear", "--catalog", "example1_f",
            "--n", "1", "--step", "1", "--count", "40", "--out", str(tmp_path),
        )
        assert code == EXIT_FAILS

    def test_ratio_along_diagonal(self, capsys, tmp_path):
        code, _, _ = _run(
            capsys, "check", "--prop", "ratio", "--ray", "diagonal", "--catalog", "product_minus_one",
            "--n", "2", "--step", "0.5", "--count", "6", "--out", str(tmp_path),
        )
        assert code == EXIT_OK

    def test_unknown_property(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["check", "--prop", "convexish", "--fn", "x1"])
        assert info.value.code == EXIT_USAGE


class TestVerify:
    def test_example1(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "verify", "example1", "--step", "1", "--count", "40", "--exact", "--lift-extent", "8",
            "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["verdict"] == "consistent"
        assert document["values"]["A^*(30)"] == "65/2"
        rows = _csv(tmp_path / "example1_levels.csv")
        assert list(rows[0]) == ["x1", "A", "Asub", "Astar", "f", "g"]
        assert all(row["Astar"] == row["g"] and row["Asub"] == row["f"] for row in rows)

    def test_screen_obstruction(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "verify", "screen", "--f", "x1/(1+x1)", "--g", "x1^2+x1",
            "--n", "1", "--step", "0.25", "--count", "16", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["conclusion"] == "obstruction-found"
        assert document["branch"] == "concave-f"

    def test_screen_from_catalog(self, capsys, tmp_path):
        code, out, _ = _run(
            capsys, "verify", "screen", "--f-catalog", "example1_f", "--g-catalog", "example1_g",
            "--step", "1", "--count", "40", "--exact", "--out", str(tmp_path),
        )
        assert code == EXIT_OK
        assert json.loads(out)["conclusion"] == "no-theorem-obstruction"

    def test_screen_needs_g(self, capsys, tmp_path):
        code, _, err = _run(capsys, "verify", "screen", "--f", "x1", "--count", "4", "--out", str(tmp_path))
        assert code == EXIT_USAGE
        assert "--g" in err

    def test_fixed_point_with_docx_and_summary(self, capsys, tmp_path):
        docx_path = tmp_path / "report.docx"
        summary_path = tmp_path / "summary.csv"
        code, out, _ = _run(
            capsys, "verify", "fixed-point", "--catalog", "skew_quad_strict",
            "--n", "2", "--step", "0.5", "--count", "8", "--out", str(tmp_path),
            "--docx", str(docx_path), "--summary", str(summary_path),
        )
        assert code == EXIT_OK
        assert json.loads(out)["verdict"] == "consistent"
        assert docx_path.read_bytes()[:2] == b"PK"
        assert _csv(summary_path)[0]["verdict"] == "consistent"

    def test_inconsistent_exit_code(self, capsys, tmp_path, monkeypatch):
        from src import config

        monkeypatch.setattr(config, "GAP_RATIO_MAX", 0.3)
        code, out, _ = _run(
            capsys, "verify", "linear-dual", "--catalog", "power(2)",
            "--step", "0.5", "--count", "2", "--levels", "3", "--exact", "--out", str(tmp_path),
        )
        assert code == EXIT_INCONSISTENT
        assert json.loads(out)["verdict"] == "inconsistent"

    def test_lemmas(self, capsys, tmp_path):
        code, out, _ = _run(capsys, "verify", "lemmas", "--out", str(tmp_path))
        assert code == EXIT_OK
        assert (tmp_path / "verify_lemmas.json").exists()


def test_unexpected_error_exits_with_usage_code(capsys, monkeypatch):
    from src import cli

    def broken(args):
        raise RuntimeError("worker crashed")

    monkeypatch.setitem(cli.COMMANDS, "check", broken)
    code, _, err = _run(capsys, "check", "--prop", "super", "--fn", "x1", "--count", "4")
    assert code == EXIT_USAGE
    assert "worker crashed" in err
