"""Tests for the command-line application."""

import argparse
import json

import pytest

from companion_algebra import app
from companion_algebra.app import merge_settings, parse_matrix, run
from companion_algebra.cli import render_json
from companion_algebra.config import get_default_config
from companion_algebra.errors import InvariantViolation, ParseError
from companion_algebra.models import Report
from companion_algebra.rings import INTEGERS, RATIONALS


def _run_json(capsys, argv):
    code = run(argv + ["--json"])
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


@pytest.mark.integration
class TestRunCommands:
    """End-to-end runs of every subcommand."""

    @pytest.fixture(autouse=True)
    def _isolated(self, isolated_config):
        return isolated_config

    def test_resultant(self, capsys):
        """Should report Res = 4 and the Sylvester matrix."""
        data = _run_json(capsys, ["resultant", "--ring", "z", "-f", "x^2", "-g", "x^2 - 2"])
        assert data["subcommand"] == "resultant"
        assert data["result"]["resultant"] == "4"
        assert len(data["result"]["sylvester"]) == 4
        assert data["verdicts"] == {"unit": False, "zero": False}

    def test_det_identity(self, capsys):
        """Should confirm the determinant identity."""
        data = _run_json(capsys, ["det-identity", "-f", "x^3 - 2", "-g", "x^3 - 3"])
        assert data["verdicts"]["equal"] is True
        assert data["inputs"]["n"] == 3

    def test_det_identity_sweep(self, capsys):
        """Should sweep random pairs in input order."""
        argv = ["det-identity", "--sweep", "6", "--degree", "2", "--seed", "1", "--workers", "2"]
        data = _run_json(capsys, argv)
        assert data["result"]["count"] == 6
        assert data["verdicts"]["equal"] is True
        again = _run_json(capsys, argv[:-2])
        assert again["result"]["pairs"] == data["result"]["pairs"]

    def test_index(self, capsys):
        """Should report index 4 for x^2 and x^2 - 2."""
        data = _run_json(capsys, ["index", "-f", "x^2", "-g", "x^2 - 2"])
        assert data["result"]["predicted_index"] == "4"
        assert data["verdicts"] == {"agree": True, "finite": True}

    def test_generates(self, capsys):
        """Should decide generation over GF(5)."""
        data = _run_json(capsys, ["generates", "--ring", "gf:5", "x^2", "x^2 + 1"])
        assert data["verdicts"]["generates"] is True
        assert data["inputs"]["polys"] == ["x^2", "x^2 + 1"]

    def test_basis(self, capsys):
        """Should report rank and the h annihilator."""
        data = _run_json(capsys, ["basis", "--ring", "q", "-f", "x^3 - x", "-g", "x^3 - x^2"])
        assert data["verdicts"] == {"rank": 5, "full": False}
        assert data["result"]["h_annihilates"] is True

    def test_relations(self, capsys):
        """Should verify every relation including the coordinate identities."""
        data = _run_json(capsys, ["relations", "-f", "x^3 - 2", "-g", "x^3 - 3"])
        assert data["verdicts"]["all_hold"] is True
        assert data["result"]["checks"]["coordinate_identities"] is True
        assert data["result"]["scalar_lemma_qualifying"] >= 1

    def test_solve_q(self, capsys):
        """Should report a non-unique solution when f and g share a root."""
        data = _run_json(capsys, ["solve-q", "--ring", "q", "-f", "x^2 - 1", "-g", "x^2 + x - 2"])
        assert data["verdicts"]["unique"] is False

    def test_presentation_text(self, capsys):
        """Should print the presentation as text."""
        code = run(["presentation", "--ring", "q", "-f", "x^3 - 2", "-g", "x^3 - 3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "Presentation (full-constant-s) over Q, n = 3" in out
        assert "[swap-2]" in out

    def test_verify_presentation(self, capsys):
        """Should pass the randomized presentation check."""
        argv = ["verify-presentation", "--ring", "q", "-f", "x^3 - 2", "-g", "x^3 - 3", "--trials", "20"]
        data = _run_json(capsys, argv)
        assert data["verdicts"]["passed"] is True
        assert data["inputs"]["trials"] == 20
        assert data["result"]["words_checked"] == 20

    def test_commutant(self, capsys):
        """Should find only scalars for distinct f and g."""
        data = _run_json(capsys, ["commutant", "--ring", "q", "-f", "x^2", "-g", "x^2 - 1"])
        assert data["verdicts"]["scalar_only"] is True

    def test_invariant_subspaces(self, capsys):
        """Should find a common invariant subspace."""
        argv = ["invariant-subspaces", "--ring", "q", "x^2 - 3*x + 2", "x^2 - 4*x + 3"]
        data = _run_json(capsys, argv)
        assert data["verdicts"]["exists_nontrivial"] is True

    def test_oracle_span_negative_control(self, capsys):
        """Should generate M_3(Q) while the ordered products fall short."""
        argv = [
            "oracle-span", "--ring", "q",
            "--matrix", "[[1,0,0],[0,2,0],[0,0,3]]",
            "--matrix", "[[1,1,1],[1,1,1],[1,1,1]]",
        ]
        data = _run_json(capsys, argv)
        assert data["verdicts"]["full"] is True
        assert data["result"]["closed"] is False

    def test_config_file_supplies_ring(self, capsys, temp_config_file):
        """Should take the ring from the configuration file."""
        data = _run_json(capsys, ["solve-q", "--config", temp_config_file, "-f", "x^2", "-g", "x^2 - 1"])
        assert data["inputs"]["ring"] == "q"

    def test_leading_minus_polynomials(self, capsys):
        """Should read polynomials written with a leading minus sign."""
        data = _run_json(capsys, ["generates", "--ring", "q", "-2 + x^2", "-1 + x^2"])
        assert data["inputs"]["polys"] == ["x^2 - 2", "x^2 - 1"]
        assert data["verdicts"]["generates"] is True
        data = _run_json(capsys, ["resultant", "-f", "-2 + x^2", "-g", "x^2"])
        assert data["result"]["resultant"] == "4"


@pytest.mark.integration
class TestExitCodes:
    """Tests for the exit codes of run."""

    @pytest.fixture(autouse=True)
    def _isolated(self, isolated_config):
        return isolated_config

    def test_usage_error(self, capsys):
        """Should return 2 when validation fails."""
        assert run(["resultant", "-f", "x^2"]) == 2

    def test_argparse_error(self, capsys):
        """Should return 2 for unknown subcommands."""
        assert run(["nope"]) == 2

    def test_parse_error(self, capsys):
        """Should return 2 for malformed polynomials and ring specs."""
        assert run(["resultant", "-f", "x^^2", "-g", "x^2"]) == 2
        assert run(["resultant", "--ring", "gf:6", "-f", "x^2", "-g", "x^2 - 1"]) == 2
        assert "Error:" in capsys.readouterr().err

    def test_domain_error(self, capsys):
        """Should return 3 when a precondition fails."""
        assert run(["index", "--ring", "q", "-f", "x^2", "-g", "x^2 - 2"]) == 3
        assert run(["presentation", "-f", "x^2", "-g", "x^2 - 2", "--variant", "full"]) == 3
        assert run(["resultant", "-f", "2*x^2", "-g", "x^2"]) == 3

    def test_invariant_violation(self, capsys, monkeypatch):
        """Should return 4 and print the dump on an invariant violation."""
        def broken(pair):
            raise InvariantViolation("forced failure", dump={"f": str(pair.f)})

        monkeypatch.setattr(app, "det_identity_check", broken)
        assert run(["det-identity", "-f", "x^2", "-g", "x^2 - 2"]) == 4
        err = capsys.readouterr().err
        assert "forced failure" in err
        assert "f: x^2" in err


class TestHelpers:
    """Tests for merge_settings and parse_matrix functions."""

    def test_flags_override_config(self):
        """Should let explicit flags win over configuration values."""
        args = argparse.Namespace(ring="q", trials=None, max_word_len=3, seed=None, coeff_bound=None, workers=None)
        settings = merge_settings(args, get_default_config())
        assert settings["ring"] == "q"
        assert settings["max_word_len"] == 3
        assert settings["trials"] == 100

    def test_parse_matrix(self):
        """Should parse JSON rows of integers and element strings."""
        m = parse_matrix('[[1, "1/2"], [0, -3]]', RATIONALS)
        assert (m.rows, m.cols) == (2, 2)
        assert m[0, 1].value.denominator == 2

    @pytest.mark.parametrize("text", ["nope", "[]", "[[1, 2], [3]]", "[[1.5]]", '{"rows": 1}'])
    def test_parse_matrix_errors(self, text):
        """Should raise ParseError on malformed matrices."""
        with pytest.raises(ParseError):
            parse_matrix(text, INTEGERS)


REPRODUCIBLE_RUNS = [
    ["det-identity", "--sweep", "8", "--degree", "3", "--seed", "5", "--workers", "3"],
    ["det-identity", "--sweep", "8", "--degree", "3", "--seed", "5", "--workers", "3", "--json"],
    ["verify-presentation", "--ring", "q", "-f", "x^3 - 2", "-g", "x^3 - 3", "--trials", "25", "--seed", "9"],
    ["verify-presentation", "--ring", "z", "-f", "x^2", "-g", "x^2 - 2", "--seed", "9", "--json"],
    ["relations", "-f", "x^3 - 2", "-g", "x^3 + x - 3", "--seed", "4", "--json"],
]


@pytest.mark.integration
class TestReproducibility:
    """Runs with the same seed print the same report, and JSON reports reload."""

    @pytest.fixture(autouse=True)
    def _isolated(self, isolated_config):
        return isolated_config

    @pytest.mark.parametrize("argv", REPRODUCIBLE_RUNS)
    def test_same_seed_same_output(self, capsys, argv):
        """Should print byte-identical output for repeated runs."""
        assert run(list(argv)) == 0
        first = capsys.readouterr().out
        assert run(list(argv)) == 0
        second = capsys.readouterr().out
        assert first
        assert first == second

    def test_seed_changes_sweep(self, capsys):
        """Should draw different pairs for a different seed."""
        base = ["det-identity", "--sweep", "4", "--degree", "2", "--json"]
        first = _run_json(capsys, base + ["--seed", "1"])
        second = _run_json(capsys, base + ["--seed", "2"])
        assert first["result"]["pairs"] != second["result"]["pairs"]

    @pytest.mark.parametrize("argv", [
        ["resultant", "--ring", "zi", "-f", "x^2", "-g", "x^2 - (1+i)"],
        ["det-identity", "--sweep", "5", "--degree", "2", "--seed", "3"],
        ["index", "-f", "x^2", "-g", "x^2 - 2"],
        ["basis", "--ring", "q", "-f", "x^3 - x", "-g", "x^3 - x^2"],
        ["relations", "-f", "x^3 - 2", "-g", "x^3 - 3"],
        ["presentation", "--ring", "q", "-f", "x^3 - 2", "-g", "x^3 - 3"],
        ["invariant-subspaces", "--ring", "q", "x^2 - 3*x + 2", "x^2 - 4*x + 3"],
    ])
    def test_json_round_trip(self, capsys, argv):
        """Should rebuild the printed JSON from Report.from_dict."""
        assert run(argv + ["--json"]) == 0
        printed = capsys.readouterr().out
        data = json.loads(printed)
        report = Report.from_dict(data)
        assert report.to_dict() == data
        assert render_json(report) == printed.rstrip("\n")
