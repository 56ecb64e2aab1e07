"""Tests for models module."""

import json
from fractions import Fraction

from companion_algebra.matrices import Matrix
from companion_algebra.models import (
    DetIdentityReport,
    GenerationVerdict,
    IndexReport,
    Obstruction,
    PresentationCheckReport,
    Report,
    element_text,
    matrix_rows,
    poly_dict,
)
from companion_algebra.poly import parse_poly
from companion_algebra.rings import galois_field


class TestHelpers:
    """Tests for the rendering helpers."""

    def test_element_text(self, qq):
        """Should render exact strings and keep None."""
        assert element_text(qq.element(Fraction(-1, 2))) == "-1/2"
        assert element_text(None) is None

    def test_poly_dict(self, zz):
        """Should give text and constant-first coefficient strings."""
        data = poly_dict(parse_poly("x^2 - 2", zz))
        assert data == {"text": "x^2 - 2", "coeffs": ["-2", "0", "1"]}

    def test_matrix_rows(self, zi):
        """Should render every entry as a string."""
        assert matrix_rows(Matrix.from_rows(zi, [[(0, 1), 2]])) == [["i", "2"]]


class TestReportRecords:
    """Tests for the to_dict methods of report records."""

    def test_det_identity(self, zz):
        """Should keep counts as ints and values as strings."""
        report = DetIdentityReport(n=2, det_m=zz.element(4), resultant=zz.element(4), res_power=zz.element(4), equal=True)
        data = report.to_dict()
        assert data["n"] == 2
        assert data["det_m"] == "4"
        assert data["via_lift"] is False

    def test_infinite_index(self, zz):
        """Should render a missing index as infinite."""
        report = IndexReport(
            n=2, resultant=zz.zero(), predicted_index=None, snf_index=None,
            invariant_factors=(zz.one(), zz.one()), agree=True, rank=2, rank_deficient=True, basis_rank=2,
        )
        data = report.to_dict()
        assert data["predicted_index"] == "infinite"
        assert data["invariant_factors"] == ["1", "1"]

    def test_generation_verdict(self):
        """Should nest obstructions with their prime and factor."""
        field = galois_field(2)
        verdict = GenerationVerdict(
            generates=False,
            method="resultant-unit",
            obstructions=(Obstruction(prime=2, common_factor=parse_poly("x^2", field)),),
        )
        data = verdict.to_dict()
        assert data["obstructions"] == [{"prime": "2", "common_factor": {"text": "x^2", "coeffs": ["0", "0", "1"]}}]
        assert data["gcd"] is None


class TestReport:
    """Tests for Report envelope."""

    def test_to_dict_from_dict(self):
        """Should rebuild an equal report from its dictionary."""
        check = PresentationCheckReport(
            variant="full", relations_checked=4, words_checked=10, splits_checked=10,
            basis_size=9, basis_rank=9, expected_dimension=9, passed=True,
        )
        report = Report("verify-presentation", {"ring": "q"}, check.to_dict(), {"passed": True})
        rebuilt = Report.from_dict(json.loads(json.dumps(report.to_dict())))
        assert rebuilt == report

    def test_from_dict_defaults(self):
        """Should tolerate missing sections."""
        report = Report.from_dict({"subcommand": "index"})
        assert report.inputs == {} and report.result == {} and report.verdicts == {}
