"""Tests for generation verdicts, the span-closure oracle and the commutant."""

import random
from fractions import Fraction

import pytest

from companion_algebra.core import CompanionPair, commutant, generates_full, span_closure_oracle
from companion_algebra.core.generation import constant_generator, family_closure, pair_closure
from companion_algebra.errors import DomainError
from companion_algebra.matrices import Matrix
from companion_algebra.poly import parse_monic, parse_poly, poly_gcd, random_monic, resultant
from companion_algebra.rings import galois_field, parse_ring_spec


def _family(texts, ring="z"):
    ring = parse_ring_spec(ring)
    return [parse_monic(t, ring) for t in texts]


class TestGeneratesFull:
    """Tests for generates_full function."""

    def test_prime_field(self):
        """Should generate over GF(5) for x^2 and x^2 + 1."""
        verdict = generates_full(_family(["x^2", "x^2 + 1"], "gf:5"))
        assert verdict.generates
        assert verdict.method == "gcd"

    def test_rational_common_root(self):
        """Should not generate over Q when f and g share a root."""
        verdict = generates_full(_family(["x^2 - 1", "x^2 + x - 2"], "q"))
        assert not verdict.generates
        assert verdict.gcd == parse_poly("x - 1", parse_ring_spec("q"))

    def test_integers_with_obstruction(self):
        """Should report the prime where f and g meet."""
        verdict = generates_full(_family(["x^2", "x^2 - 2"]))
        assert not verdict.generates
        assert verdict.resultant == 4
        assert [o.prime for o in verdict.obstructions] == [2]
        assert verdict.obstructions[0].common_factor == parse_poly("x^2", galois_field(2))

    def test_integers_unit_resultant(self):
        """Should generate over Z when Res(f, g) = +-1."""
        verdict = generates_full(_family(["x^2", "x^2 - 1"]))
        assert verdict.generates
        assert verdict.obstructions == ()

    def test_integers_zero_resultant(self):
        """Should return the common factor when Res = 0."""
        verdict = generates_full(_family(["x^2 - 1", "x^2 + x - 2"]))
        assert not verdict.generates
        assert verdict.common_factor == parse_poly("x - 1", parse_ring_spec("z"))

    def test_composite_modulus(self):
        """Should test every maximal ideal of Z/m."""
        assert generates_full(_family(["x^2", "x^2 + 1"], "zmod:6")).generates
        verdict = generates_full(_family(["x^2 + 5", "x^2 + 1"], "zmod:6"))
        assert not verdict.generates
        assert [o.prime for o in verdict.obstructions] == [2]

    def test_gaussian(self):
        """Should use the resultant unit test over Z[i]."""
        assert generates_full(_family(["x^2", "x^2 - (i)"], "zi")).generates
        assert not generates_full(_family(["x^2", "x^2 - (1+i)"], "zi")).generates

    def test_three_polynomials(self):
        """Should handle families through pairwise resultants."""
        assert generates_full(_family(["x^2", "x^2 - 1", "x^2 + 1"])).generates
        verdict = generates_full(_family(["x^2", "x^2 + 2", "x^2 + 4"]))
        assert not verdict.generates
        assert verdict.method == "candidate-primes"

    def test_pairwise_common_roots_without_shared_root(self):
        """Should fall back to the constant generator when every resultant vanishes."""
        # (x-1)(x-2), (x-1)(x-3), (x-2)(x-3): the ideal meets Z in 2Z
        family = _family(["x^2 - 3*x + 2", "x^2 - 4*x + 3", "x^2 - 5*x + 6"])
        verdict = generates_full(family)
        assert not verdict.generates
        assert verdict.method == "hnf-constant"
        assert verdict.constant_generator == 2
        assert constant_generator(family) == 2
        assert [o.prime for o in verdict.obstructions] == [2]
        assert verdict.obstructions[0].common_factor == parse_poly("x + 1", galois_field(2))

    def test_needs_two_polynomials(self):
        """Should refuse a family of one."""
        with pytest.raises(DomainError):
            generates_full(_family(["x^2"]))

    def test_agrees_with_closure_over_prime_field(self):
        """Should match the brute-force closure on random GF(3) pairs."""
        ring = galois_field(3)
        gen = random.Random(4)
        for _ in range(15):
            family = [random_monic(ring, 2, gen), random_monic(ring, 2, gen)]
            full = family_closure(family).dimension == 4
            assert generates_full(family).generates == full

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["gf:2", "gf:3", "gf:5", "q"])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_closure_gcd_and_resultant_agree(self, spec, n, forced_pair):
        """Should give the same verdict from the closure, the gcd and the resultant over a field."""
        ring = parse_ring_spec(spec)
        gen = random.Random(40 + n)
        pairs = [CompanionPair.build(random_monic(ring, n, gen, 2), random_monic(ring, n, gen, 2)) for _ in range(8)]
        pairs += [forced_pair(ring, n, m, gen, 2)[0] for m in range(1, n + 1)]
        for pair in pairs:
            by_closure = pair_closure(pair).dimension == n * n
            by_gcd = poly_gcd(pair.f, pair.g).degree == 0
            by_resultant = not resultant(pair.f, pair.g).is_zero()
            verdict = generates_full([pair.f, pair.g])
            assert verdict.generates == by_closure == by_gcd == by_resultant


class TestSpanClosureOracle:
    """Tests for span_closure_oracle function."""

    def test_generating_pair(self, make_pair):
        """Should reach dimension n^2 for a generating pair."""
        report = pair_closure(make_pair("x^2", "x^2 + 1", "gf:5"))
        assert report.dimension == 4
        assert report.closed
        assert report.reversed_closed

    def test_companion_products_close_both_ways(self, make_pair):
        """Should find C^i D^j and D^j C^i both spanning the algebra of a degenerate pair."""
        report = pair_closure(make_pair("x^3 - x", "x^3 - x^2", "q"))
        assert report.dimension == 5
        assert report.closed
        assert report.reversed_closed

    def test_integer_index(self, make_pair):
        """Should report lattice index 1 for a unit resultant."""
        report = pair_closure(make_pair("x^2", "x^2 - 1"))
        assert report.dimension == 4
        assert report.lattice_index == 1

    def test_products_need_not_close(self, qq):
        """Should expose a pair whose A^i B^j span is not an algebra."""
        diagonal = Matrix.from_rows(qq, [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
        ones = Matrix.from_rows(qq, [[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        report = span_closure_oracle([diagonal, ones])
        assert report.dimension == 9
        assert report.products_dimension < 9
        assert not report.closed
        assert not report.reversed_closed

    def test_single_generator(self, qq):
        """Should give the polynomial algebra of one matrix."""
        report = span_closure_oracle([Matrix.scalar(qq, 3, Fraction(1, 2))])
        assert report.dimension == 1

    def test_errors(self, z6, qq):
        """Should refuse empty input, mixed sizes and composite moduli."""
        with pytest.raises(DomainError):
            span_closure_oracle([])
        with pytest.raises(DomainError):
            span_closure_oracle([Matrix.identity(qq, 2), Matrix.identity(qq, 3)])
        with pytest.raises(DomainError):
            span_closure_oracle([Matrix.identity(z6, 2)])


class TestCommutant:
    """Tests for commutant function."""

    def test_scalars_only(self, make_pair):
        """Should find only scalars when f != g."""
        report = commutant(make_pair("x^3 - 2", "x^3 - 3", "q"))
        assert report.dimension == 1
        assert report.basis[0].is_scalar()

    def test_degenerate_pair(self, make_pair):
        """Should find R[C] of dimension n when f = g."""
        pair = make_pair("x^3 - 2", "x^3 - 2", "gf:5")
        report = commutant(pair)
        assert report.dimension == report.expected == 3
        for a in report.basis:
            assert a @ pair.C == pair.C @ a

    def test_needs_field(self, make_pair):
        """Should refuse rings that are not fields."""
        with pytest.raises(DomainError):
            commutant(make_pair("x^2", "x^2 - 1"))

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["q", "gf:5"])
    def test_random_pairs(self, spec):
        """Should give scalars for f != g and R[C] for f = g on random pairs."""
        ring = parse_ring_spec(spec)
        gen = random.Random(9)
        for k in range(50):
            n = 2 + k % 3
            f = random_monic(ring, n, gen, 3)
            g = f if k % 10 == 0 else random_monic(ring, n, gen, 3)
            pair = CompanionPair.build(f, g)
            report = commutant(pair)
            assert report.dimension == (n if f == g else 1)
            for a in report.basis:
                assert a @ pair.C == pair.C @ a
                assert a @ pair.D == pair.D @ a
            if f != g:
                assert report.basis[0].is_scalar()
