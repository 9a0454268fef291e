"""CLI contract tests: outputs, exit codes, determinism, golden files."""

import json
from pathlib import Path

import pytest

from berezin_range import presets as presets_module
from berezin_range.cli import (
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    EXIT_VERIFY,
    main,
)
from berezin_range.geometry import SampleGrid
from berezin_range.operators import RankOneMonomial
from berezin_range.presets import FigurePreset

GOLDEN = Path(__file__).parent / "golden"


class TestPredict:
    def test_rank_one_hardy_text(self, capsys):
        assert main(["predict", "--op", "rank1:m=1,n=1", "--gamma", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ClosedInterval [0, 0.25]" in out

    def test_json_format(self, capsys):
        assert (
            main(["predict", "--op", "rank1:m=2,n=3", "--gamma", "0.5", "--format", "json"])
            == EXIT_OK
        )
        payload = json.loads(capsys.readouterr().out)
        assert payload["shape"] == "ClosedDisc"
        assert payload["radius"] == pytest.approx(0.2588039, abs=1e-6)


class TestTransform:
    def test_oracle_agreement_reported(self, capsys):
        rc = main(
            [
                "transform",
                "--op",
                "pairs:[(g=[1,-1];h=[1,0,-1])]",
                "--gamma",
                "0.1",
                "--lambda=-0.1+0.5i",
                "--oracle",
            ]
        )
        assert rc == EXIT_OK
        out = capsys.readouterr().out
        assert "closed form: 1.27502" in out
        diff = float(out.strip().splitlines()[-1].split(":")[1])
        assert diff <= 1e-10


class TestExitCodes:
    def test_usage_errors(self):
        assert main([]) == EXIT_USAGE
        assert main(["predict", "--gamma", "1"]) == EXIT_USAGE  # missing --op
        assert main(["nonsense"]) == EXIT_USAGE
        assert main(["figure"]) == EXIT_USAGE  # neither --name nor --list-presets

    def test_parse_errors(self):
        assert main(["predict", "--op", "bogus:m=1", "--gamma", "1"]) == EXIT_PARSE
        assert main(["predict", "--op", "rank1:m=,n=1", "--gamma", "1"]) == EXIT_PARSE
        assert main(["figure", "--name", "no-such-preset"]) == EXIT_PARSE

    def test_invariant_violations(self):
        assert main(["predict", "--op", "geom:a=1.2", "--gamma", "1"]) == EXIT_INVARIANT
        assert main(["predict", "--op", "rank1:m=1,n=1", "--gamma", "-1"]) == EXIT_INVARIANT

    def test_help_and_version_exit_zero(self, capsys):
        assert main(["--version"]) == 0
        assert main(["--help"]) == 0

    @pytest.mark.parametrize(
        "op",
        ["", ":", "rank1:", "diag:a=[", "mult:", "pairs:[()]", "geom:a=one"],
    )
    def test_malformed_ops_exit_two(self, op):
        assert main(["predict", "--op", op, "--gamma", "1"]) == EXIT_PARSE


class TestSample:
    def test_csv_matches_golden(self, tmp_path):
        out = tmp_path / "cloud.csv"
        rc = main(
            [
                "sample",
                "--op",
                "rank1:m=1,n=1",
                "--gamma",
                "1",
                "--n-radial",
                "3",
                "--n-angular",
                "4",
                "-o",
                str(out),
            ]
        )
        assert rc == EXIT_OK
        assert out.read_bytes() == (GOLDEN / "sample_rank11_hardy_3x4.csv").read_bytes()

    def test_schema_header(self, tmp_path):
        out = tmp_path / "cloud.csv"
        main(
            [
                "sample",
                "--op",
                "mult:poly=[0,1]",
                "--gamma",
                "2",
                "--n-radial",
                "3",
                "--n-angular",
                "6",
                "-o",
                str(out),
            ]
        )
        text = out.read_text()
        assert text.splitlines()[0] == "lambda_re,lambda_im,r,theta,value_re,value_im"
        assert "\r" not in text


class TestClassify:
    def test_json_report_schema(self, tmp_path):
        out = tmp_path / "report.json"
        rc = main(
            [
                "classify",
                "--op",
                "rank1:m=1,n=2",
                "--gamma",
                "1",
                "--n-radial",
                "60",
                "--n-angular",
                "120",
                "-o",
                str(out),
            ]
        )
        assert rc == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["schema_version"] == 1
        assert payload["spec"] == "rank1:m=1,n=2"
        assert payload["gamma"] == 1.0
        assert payload["grid"] == {"n_radial": 60, "n_angular": 120, "r_max": 0.999}
        assert payload["verdict"] in ("Convex", "NotConvex", "Inconclusive")
        assert payload["prediction"]["shape"] == "ClosedDisc"
        assert isinstance(payload["discrepancies"], list) and payload["discrepancies"]


class TestVerify:
    def test_small_corpus_passes(self, capsys):
        assert main(["verify", "--count", "12", "--depth", "150"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "all 12 triples within tolerance" in out

    def test_unattainable_tolerance_exits_four(self, capsys):
        assert (
            main(["verify", "--count", "6", "--depth", "150", "--tol", "1e-30"])
            == EXIT_VERIFY
        )


class TestFigure:
    def test_list_presets(self, capsys):
        assert main(["figure", "--list-presets"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in ("th1-hardy", "ex31-g0.1", "bfactor-zeta2", "blaschke-deg3"):
            assert name in out

    def test_svg_determinism_and_csv_sidecar(self, tmp_path, monkeypatch):
        tiny = FigurePreset(
            "tiny-test",
            RankOneMonomial(1, 1),
            1.0,
            "tiny determinism check",
            SampleGrid(10, 16),
        )
        monkeypatch.setitem(presets_module.PRESETS, "tiny-test", tiny)
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        assert main(["figure", "--name", "tiny-test", "-o", str(a)]) == EXIT_OK
        assert main(["figure", "--name", "tiny-test", "-o", str(b)]) == EXIT_OK
        data = a.read_bytes()
        assert data == b.read_bytes()
        assert data.lstrip().startswith(b"<?xml")
        # the delimited cloud is written alongside the figure
        csv_text = (tmp_path / "a.csv").read_text()
        assert csv_text.splitlines()[0] == "lambda_re,lambda_im,r,theta,value_re,value_im"
        assert len(csv_text.splitlines()) == 1 + 1 + 9 * 16


class TestTable:
    def test_table1_columns_and_first_row(self, tmp_path):
        out = tmp_path / "t1.csv"
        assert main(["table", "--name", "table1", "--gamma", "1", "-o", str(out)]) == EXIT_OK
        import csv

        with out.open() as fh:
            rows = list(csv.DictReader(fh))
        text = out.read_text()
        assert text.splitlines()[0] == (
            "operator,range_shape,closed_form_value,grid_value,difference,note"
        )
        assert rows[0]["operator"] == "rank1:m=1,n=1"
        assert float(rows[0]["closed_form_value"]) == pytest.approx(0.25)

    def test_table2_is_gamma_independent(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["table", "--name", "table2", "--gamma", "1", "-o", str(a)]) == EXIT_OK
        assert main(["table", "--name", "table2", "--gamma", "7", "-o", str(b)]) == EXIT_OK
        assert a.read_text() == b.read_text()

    def test_unknown_table_is_usage_error(self):
        assert main(["table", "--name", "table9"]) == EXIT_USAGE
