"""
Integration Tests for the excross CLI

Runs main(argv) end to end and checks reports and exit statuses:
- 0 when every check passes, 1 on a failed check, 2 on bad input
- json, csv and text renderings, --out

Author: excross Team
"""

import pytest
import sys
import os
import io
import json

import pandas as pd

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.cli.main import build_parser, main

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), '..', 'docs', 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, name)


def run_json(capsys, *argv):
    status = main([*argv, "--format", "json"])
    return status, json.loads(capsys.readouterr().out)


class TestSemigroupCommands:
    """Test suite for excross sg."""

    def test_enumerate_cyclic_2(self, capsys):
        status, report = run_json(capsys, "sg", "enumerate", "--group", "cyclic 2")
        assert status == 0
        assert report["dimensions"] == {"|S(G)|": 3}
        assert report["tables"]["S(G)"]["elements"] == ["[e]", "e_{a}[e]", "[a]"]
        assert report["command"] == "sg enumerate"

    def test_enumerate_text(self, capsys):
        assert main(["sg", "enumerate", "--group", "cyclic 2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("excross sg enumerate")
        assert "3 elements: [e], e_{a}[e], [a]" in out
        assert out.rstrip().endswith("all checks passed")

    def test_table_as_csv(self, capsys):
        assert main(["sg", "table", "--group", "cyclic 2", "--format", "csv"]) == 0
        df = pd.read_csv(io.StringIO(capsys.readouterr().out))
        assert list(df.columns) == ["table", "row", "column", "value"]
        # 3 x 3 multiplication table in long form
        assert len(df) == 9

    def test_table_out_json_from_suffix(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        assert main(["sg", "table", "--group", "cyclic 3", "--out", str(out)]) == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        table = report["tables"]["S(G)"]
        assert len(table["elements"]) == 8
        assert len(table["table"]) == 8
        assert all(len(row) == 8 for row in table["table"])

    def test_table_out_csv_from_suffix(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        assert main(["sg", "table", "--group", "cyclic 2", "--out", str(out)]) == 0
        df = pd.read_csv(out)
        assert len(df) == 9

    def test_explicit_format_beats_suffix(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        assert main(["sg", "table", "--group", "cyclic 2", "--out", str(out), "--format", "text"]) == 0
        assert out.read_text(encoding="utf-8").startswith("excross sg table")

    def test_table_in_text_report(self, capsys):
        assert main(["sg", "table", "--group", "cyclic 2"]) == 0
        out = capsys.readouterr().out
        assert "table S(G) (3 x 3):" in out
        assert "e_{a}[e]" in out

    def test_oracle_check(self, capsys):
        status, report = run_json(capsys, "sg", "oracle-check", "--group", "cyclic 2", "--max-word-len", "5")
        assert status == 0
        assert "oracle" in report["tables"]

    def test_sg_needs_a_group(self, capsys):
        assert main(["sg", "enumerate"]) == 2


class TestActionCommands:
    """Test suite for excross action."""

    def test_validate_p1_document(self, capsys):
        status, report = run_json(capsys, "action", "validate", "--action", fixture_path("p1.json"))
        assert status == 0
        assert report["dimensions"]["X"] == 2
        assert report["fixture"] == "p1.json"

    def test_validate_broken_z4_fails_with_witness(self, capsys):
        status, report = run_json(capsys, "action", "validate", "--fixture", "broken_z4")
        assert status == 1
        failed = [c for c in report["checks"] if not c["passed"]]
        assert failed[0]["witness"] == {"g": "a", "h": "a", "x": 0}

    def test_validate_broken_z4_document(self, capsys):
        assert main(["action", "validate", "--action", fixture_path("broken_z4.json")]) == 1

    def test_induce(self, capsys):
        status, report = run_json(capsys, "action", "induce", "--fixture", "p1")
        assert status == 0
        assert report["tables"]["E_s"]["table"] == [[2, 2], [1, 1], [1, 1]]
        beta = report["tables"]["beta"]
        assert beta["elements"] == ["[e]", "e_{a}[e]", "[a]"]
        assert beta["table"][2] == [1, [["1", "0"]], [["1"]]]

    def test_induce_csv_carries_beta(self, capsys):
        assert main(["action", "induce", "--fixture", "p1", "--format", "csv"]) == 0
        df = pd.read_csv(io.StringIO(capsys.readouterr().out), dtype=str)
        beta = df[df["table"] == "beta"]
        assert len(beta) == 9
        cell = beta[(beta["row"] == "[a]") & (beta["column"] == "beta_s")]["value"].tolist()
        assert cell == ['[["1"]]']

    def test_invalid_group_table_is_bad_input(self, tmp_path, capsys):
        path = tmp_path / "a.json"
        document = {"group": {"names": ["e", "a"], "table": [[0, 1], [1, 1]]}, "set_size": 2}
        path.write_text(json.dumps(document), encoding="utf-8")
        assert main(["action", "validate", "--action", str(path)]) == 2
        assert "not a permutation" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{\"set_size\": 2,,}", encoding="utf-8")
        assert main(["action", "validate", "--action", str(path)]) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_group_mismatch(self, capsys):
        assert main(["action", "validate", "--action", fixture_path("p1.json"), "--group", "cyclic 3"]) == 2

    def test_fixture_group_mismatch(self, capsys):
        assert main(["action", "validate", "--fixture", "p1", "--group", "klein4"]) == 2

    def test_missing_action(self, capsys):
        assert main(["action", "validate"]) == 2

    def test_unknown_fixture(self, capsys):
        assert main(["action", "validate", "--fixture", "nope"]) == 2


class TestCrossedProductCommands:
    """Test suite for excross cp and excross check."""

    def test_cp_group(self, capsys):
        status, report = run_json(capsys, "cp", "group", "--fixture", "p1")
        assert status == 0
        assert report["dimensions"] == {"A⋊G": 3}

    def test_cp_semigroup(self, capsys):
        status, report = run_json(capsys, "cp", "semigroup", "--fixture", "p1")
        assert status == 0
        assert report["dimensions"] == {"L": 4, "N": 1, "L/N": 3}

    def test_check_iso_p1(self, capsys):
        status, report = run_json(capsys, "check", "iso", "--fixture", "p1")
        assert status == 0
        assert report["dimensions"]["A⋊G"] == 3
        assert report["dimensions"]["L"] == 4
        assert report["dimensions"]["N"] == 1
        assert any("mutually inverse" in note for note in report["notes"])

    def test_check_iso_zero_product_fails(self, capsys):
        status, report = run_json(capsys, "check", "iso", "--fixture", "zero_product")
        assert status == 1
        assert not report["checks"][0]["passed"]

    def test_check_assoc_zero_product(self, capsys):
        status, report = run_json(capsys, "check", "assoc", "--fixture", "zero_product")
        assert status == 1
        # A itself is associative; D_a is not idempotent and both crossed products fail
        assert report["checks"][0]["passed"]
        assert sum(not c["passed"] for c in report["checks"]) >= 3

    def test_check_assoc_algebra_document(self, capsys):
        status, report = run_json(capsys, "check", "assoc", "--algebra", fixture_path("zero_product_algebra.json"))
        assert status == 0
        assert report["dimensions"] == {"A": 3}

    def test_check_covariant(self, capsys):
        status, report = run_json(capsys, "check", "covariant", "--fixture", "swap")
        assert status == 0
        assert report["dimensions"]["H"] == 3

    def test_check_all_swap(self, capsys):
        assert main(["check", "all", "--fixture", "swap", "--max-word-len", "5"]) == 0

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "reports" / "iso.json"
        assert main(["check", "iso", "--fixture", "p1", "--format", "json", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text(encoding="utf-8"))["command"] == "check iso"

    def test_json_is_deterministic(self, capsys):
        main(["cp", "semigroup", "--fixture", "p1", "--format", "json"])
        first = capsys.readouterr().out
        main(["cp", "semigroup", "--fixture", "p1", "--format", "json"])
        assert capsys.readouterr().out == first


class TestParser:
    """Test suite for argument parsing."""

    def test_unknown_verb(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_non_positive_word_length(self, capsys):
        assert main(["sg", "oracle-check", "--group", "cyclic 2", "--max-word-len", "0"]) == 2

    @pytest.mark.parametrize("verb, command", [
        ("sg", "enumerate"), ("sg", "table"), ("sg", "oracle-check"),
        ("action", "validate"), ("action", "induce"),
        ("cp", "group"), ("cp", "semigroup"),
        ("check", "iso"), ("check", "assoc"), ("check", "covariant"), ("check", "all"),
    ])
    def test_every_command_parses(self, verb, command):
        args = build_parser().parse_args([verb, command, "--fixture", "p1"])
        assert (args.verb, args.command) == (verb, command)
        assert args.format is None
