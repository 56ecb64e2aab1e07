"""Tests for presentation module."""

import pytest

from companion_algebra.core import CompanionPair
from companion_algebra.errors import DomainError, ParseError
from companion_algebra.poly import Poly, as_monic, random_monic, resultant
from companion_algebra.presentation import (
    NormalForm,
    Variant,
    Word,
    check_preconditions,
    choose_variant,
    emit_presentation,
    evaluate_normal_form,
    random_word,
    reduce_word,
    verify_presentation,
)
from companion_algebra.rings import is_unit, parse_ring_spec


class TestWord:
    """Tests for Word parsing and formatting."""

    @pytest.mark.parametrize("text,letters", [
        ("XYX", ("X", "Y", "X")),
        ("y^2x", ("Y", "Y", "X")),
        ("X^3 Y", ("X", "X", "X", "Y")),
        ("1", ()),
        ("", ()),
    ])
    def test_parse(self, text, letters):
        """Should accept letters, powers and the empty word."""
        assert Word.parse(text).letters == letters

    @pytest.mark.parametrize("text", ["XZ", "X^", "^2", "2X"])
    def test_parse_errors(self, text):
        """Should raise ParseError on malformed words."""
        with pytest.raises(ParseError):
            Word.parse(text)

    def test_format(self):
        """Should compress runs of equal letters."""
        assert Word.parse("YYXYXX").format() == "Y^2XYX^2"
        assert Word(()).format() == "1"
        assert Word.monomial(2, 1).format() == "X^2Y"

    def test_split_and_concat(self):
        """Should split into a prefix and suffix that concatenate back."""
        word = Word.parse("XYYX")
        left, right = word.split(1)
        assert left.format() == "X"
        assert left + right == word

    def test_random_word(self, rng):
        """Should respect the length bound."""
        for _ in range(20):
            assert len(random_word(rng, 5)) <= 5


class TestVariants:
    """Tests for check_preconditions and choose_variant functions."""

    def test_constant_s(self, make_pair):
        """Should pick the constant-s variant for x^3 - 2, x^3 - 3."""
        assert choose_variant(make_pair("x^3 - 2", "x^3 - 3", "q")) is Variant.FULL_CONSTANT_S

    def test_full(self, make_pair):
        """Should pick the full variant for a unit resultant with nonconstant s."""
        pair = make_pair("x^2", "x^2 + x + 1")
        assert choose_variant(pair) is Variant.FULL
        with pytest.raises(DomainError, match="constant unit"):
            check_preconditions(pair, Variant.FULL_CONSTANT_S)

    def test_subalgebra(self, make_pair):
        """Should fall back to the subalgebra when Res is not a unit."""
        pair = make_pair("x^2", "x^2 - 2")
        assert choose_variant(pair) is Variant.SUBALGEBRA
        with pytest.raises(DomainError, match="unit"):
            check_preconditions(pair, Variant.FULL)

    def test_no_variant(self, make_pair):
        """Should refuse Z[i] pairs whose resultant is not a unit."""
        with pytest.raises(DomainError):
            choose_variant(make_pair("x^2", "x^2 - (1+i)", "zi"))


class TestEmitPresentation:
    """Tests for emit_presentation function."""

    def test_constant_s_relations(self, make_pair):
        """Should emit f, g and n - 1 symmetric swap relations."""
        doc = emit_presentation(make_pair("x^3 - 2", "x^3 - 3", "q"), Variant.FULL_CONSTANT_S)
        assert [r.label for r in doc.relations] == ["f-rel", "g-rel", "swap-1", "swap-2"]
        assert doc.relations[2].format() == "YX + XY = X^2 + Y^2"
        text = doc.to_text()
        assert text.startswith("Presentation (full-constant-s) over Q, n = 3")
        assert "Generators: X, Y" in text

    def test_relations_hold_in_matrices(self, make_pair):
        """Should emit relations that the companion matrices satisfy."""
        pair = make_pair("x^3 + x - 1", "x^3 + 2*x^2 + 5")
        doc = emit_presentation(pair, Variant.SUBALGEBRA)
        for relation in doc.relations:
            assert relation.lhs_matrix(pair) == relation.rhs_matrix(pair)

    def test_degenerate_subalgebra(self, make_pair):
        """Should give h = 1 and the relation X = Y when f = g."""
        doc = emit_presentation(make_pair("x^2 + 1", "x^2 + 1", "q"), Variant.SUBALGEBRA)
        assert doc.h.degree == 0
        assert doc.relations[-1].label == "h-rel"
        assert doc.relations[-1].format() == "X - Y = 0"

    def test_to_dict(self, make_pair):
        """Should expose labels, tables and text."""
        data = emit_presentation(make_pair("x^2", "x^2 + x + 1"), Variant.FULL).to_dict()
        assert data["variant"] == "full"
        assert data["ring"] == "z"
        assert data["h"] is None
        assert all({"label", "lhs", "rhs", "text"} <= set(r) for r in data["relations"])

    def test_preconditions_enforced(self, make_pair):
        """Should refuse a variant whose unit test fails."""
        with pytest.raises(DomainError):
            emit_presentation(make_pair("x^2", "x^2 - 2"), Variant.FULL)


class TestReduceWord:
    """Tests for reduce_word and evaluate_normal_form functions."""

    @pytest.mark.parametrize("text", ["YX", "YYX", "XYXYX", "Y^3X^2", "X^4Y^4", "1"])
    def test_sound_full(self, make_pair, text):
        """Should reduce to a normal form evaluating to the word's matrix."""
        pair = make_pair("x^3 - 2", "x^3 - 3", "q")
        word = Word.parse(text)
        nf = reduce_word(word, pair, Variant.FULL)
        assert evaluate_normal_form(nf, pair) == word.evaluate(pair.C, pair.D)

    def test_sound_subalgebra(self, make_pair):
        """Should stay on the subalgebra basis and remain sound."""
        pair = make_pair("x^3 - x", "x^3 - x^2", "q")
        word = Word.parse("YXYYXXY")
        nf = reduce_word(word, pair, Variant.SUBALGEBRA)
        assert evaluate_normal_form(nf, pair) == word.evaluate(pair.C, pair.D)
        for i, j in nf.monomials():
            assert j == 0 or i < 1

    def test_degenerate_collapses_y(self, make_pair):
        """Should rewrite every Y to X when f = g."""
        pair = make_pair("x^2 + 1", "x^2 + 1", "q")
        nf = reduce_word(Word.parse("Y"), pair, Variant.SUBALGEBRA)
        assert nf == NormalForm.monomial(pair.ring, 1, 0)

    def test_basis_monomials_fixed(self, make_pair):
        """Should leave ordered monomials unchanged."""
        pair = make_pair("x^2", "x^2 + x + 1")
        assert reduce_word(Word.monomial(1, 1), pair, Variant.FULL) == NormalForm.monomial(pair.ring, 1, 1)


class TestVerifyPresentation:
    """Tests for verify_presentation function."""

    @pytest.mark.parametrize("f,g,ring,variant", [
        ("x^3 - 2", "x^3 - 3", "q", Variant.FULL_CONSTANT_S),
        ("x^3 - 2", "x^3 - 3", "q", Variant.FULL),
        ("x^2", "x^2 + x + 1", "z", Variant.FULL),
        ("x^2", "x^2 - 2", "z", Variant.SUBALGEBRA),
        ("x^3 - x", "x^3 - x^2", "q", Variant.SUBALGEBRA),
        ("x^3 + x + 1", "x^3 + 2", "gf:5", Variant.FULL),
        ("x^2", "x^2 + 1", "zmod:6", Variant.FULL_CONSTANT_S),
    ])
    def test_passes(self, make_pair, f, g, ring, variant):
        """Should pass every check on sound presentations."""
        pair = make_pair(f, g, ring)
        report = verify_presentation(pair, variant, trials=30, max_len=6, seed=3)
        assert report.passed
        assert report.words_checked == report.splits_checked == 30
        assert report.basis_rank == report.basis_size == report.expected_dimension

    def test_subalgebra_dimension(self, make_pair):
        """Should give n + (n - m)(n - 1) basis monomials."""
        report = verify_presentation(make_pair("x^3 - x", "x^3 - x^2", "q"), Variant.SUBALGEBRA, trials=5)
        assert report.basis_size == 5

    @pytest.mark.slow
    def test_many_trials(self, make_pair):
        """Should survive a long randomized run."""
        pair = make_pair("x^4 - 2", "x^4 - 3", "q")
        assert verify_presentation(pair, Variant.FULL_CONSTANT_S, trials=500, max_len=10).passed

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("spec,shift", [("q", 3), ("q", -1), ("gf:7", 3), ("zmod:10", 3), ("zmod:12", 5)])
    def test_constant_shift_sweep(self, rng, n, spec, shift):
        """Should verify the constant-s variant for g = f + c with c a unit of the ring."""
        ring = parse_ring_spec(spec)
        for _ in range(3):
            f = random_monic(ring, n, rng, 5)
            pair = CompanionPair.build(f, as_monic(f + Poly.constant(ring, shift)))
            assert choose_variant(pair) is Variant.FULL_CONSTANT_S
            report = verify_presentation(pair, Variant.FULL_CONSTANT_S, trials=100, max_len=12, seed=n)
            assert report.passed
            assert report.words_checked == report.splits_checked == 100
            assert report.basis_rank == report.expected_dimension == n * n

    @pytest.mark.parametrize("f,g,ring", [
        ("x^3", "x^3 + 2", "z"),
        ("x^2", "x^2 + 2", "zmod:10"),
        ("x^2", "x^2 + 3", "zmod:12"),
    ])
    def test_constant_shift_not_unit(self, make_pair, f, g, ring):
        """Should refuse the full variants when the constant g - f is not a unit."""
        pair = make_pair(f, g, ring)
        for variant in (Variant.FULL_CONSTANT_S, Variant.FULL):
            with pytest.raises(DomainError, match="unit"):
                verify_presentation(pair, variant, trials=1)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("spec", ["q", "gf:5", "zmod:10"])
    def test_full_sweep(self, rng, n, spec):
        """Should verify the full variant on random pairs with a unit resultant."""
        ring = parse_ring_spec(spec)
        checked = 0
        while checked < 3:
            pair = CompanionPair.build(random_monic(ring, n, rng, 5), random_monic(ring, n, rng, 5))
            if not is_unit(resultant(pair.f, pair.g)):
                continue
            report = verify_presentation(pair, Variant.FULL, trials=100, max_len=12, seed=checked)
            assert report.passed
            assert report.words_checked == report.splits_checked == 100
            assert report.basis_rank == report.expected_dimension == n * n
            checked += 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("spec", ["q", "z", "gf:5"])
    def test_subalgebra_sweep(self, rng, forced_pair, n, spec):
        """Should verify the subalgebra variant for every gcd degree."""
        for m in range(n + 1):
            pair, _ = forced_pair(spec, n, m, rng)
            report = verify_presentation(pair, Variant.SUBALGEBRA, trials=100, max_len=12, seed=m)
            assert report.passed
            assert report.words_checked == report.splits_checked == 100
            assert report.basis_size == report.basis_rank == report.expected_dimension
            assert report.expected_dimension == n + (n - m) * (n - 1)
