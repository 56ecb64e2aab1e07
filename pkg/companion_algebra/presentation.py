"""Finite presentations of R<C,D> and a normal-form rewriting engine.

Words in X, Y are reduced by left-to-right evaluation over a normal form, a
coefficient table on the active monomials X^i Y^j:

- ``* Y`` raises the Y-exponent and reduces Y^n with g(Y) = 0;
- ``* X`` on X^a Y^b (b >= 1) uses the swap relation Y^b X = P_b(X, Y);
- X-powers are reduced with f(X) = 0;
- for the subalgebra variant, mixed monomials X^a Y^b with a >= deg h are
  rewritten with h(X)(X - Y) = 0, highest (b, a) first.

Every rewrite strictly lowers (b, a) in lexicographic order, so reduction
terminates after finitely many steps per letter.
"""

import logging
import random
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .constants import (
    DEFAULT_MAX_WORD_LEN,
    DEFAULT_TRIALS,
    LABEL_F_RELATION,
    LABEL_G_RELATION,
    LABEL_H_RELATION,
    LABEL_SWAP_PREFIX,
)
from .core.bivariate import BivariatePoly, Monomial
from .core.pair import CompanionPair
from .core.relations import p_sequence, rank_and_basis
from .errors import DomainError, InvariantViolation, ParseError
from .matrices import Matrix, det_fraction_free, rank, vectorize_column_major
from .models import PresentationCheckReport, poly_dict
from .poly import Poly, lift_monic, resultant, split_coefficient
from .rings import RingDescriptor, RingElement, RingKind, format_element, is_unit, reduce_hom


class Variant(str, Enum):
    """Which presentation to emit."""
    FULL = "full"
    FULL_CONSTANT_S = "full-constant-s"
    SUBALGEBRA = "subalgebra"


_WORD_TOKEN_RE = re.compile(r"([XY])(?:\^(\d+))?")


@dataclass(frozen=True)
class Word:
    """Element of the free monoid on X, Y."""
    letters: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter not in ("X", "Y"):
                raise ParseError(f"invalid letter {letter!r}; words use X and Y")

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``XYYX``, ``Y^2X`` or ``1`` (the empty word); case-insensitive."""
        compact = text.replace(" ", "").replace("*", "").upper()
        if compact in ("", "1"):
            return cls(())
        letters: List[str] = []
        position = 0
        for match in _WORD_TOKEN_RE.finditer(compact):
            if match.start() != position:
                break
            letters.extend([match.group(1)] * (int(match.group(2)) if match.group(2) else 1))
            position = match.end()
        if position != len(compact):
            raise ParseError(f"invalid word {text!r}")
        return cls(tuple(letters))

    @classmethod
    def monomial(cls, a: int, b: int) -> "Word":
        """X^a Y^b."""
        return cls(("X",) * a + ("Y",) * b)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def split(self, index: int) -> Tuple["Word", "Word"]:
        return Word(self.letters[:index]), Word(self.letters[index:])

    def evaluate(self, x: Matrix, y: Matrix) -> Matrix:
        """Direct matrix product of the letters."""
        result = Matrix.identity(x.ring, x.rows)
        for letter in self.letters:
            result = result @ (x if letter == "X" else y)
        return result

    def format(self) -> str:
        if not self.letters:
            return "1"
        parts: List[str] = []
        run_letter, run = self.letters[0], 0
        for letter in self.letters + ("",):
            if letter == run_letter:
                run += 1
                continue
            parts.append(run_letter if run == 1 else f"{run_letter}^{run}")
            run_letter, run = letter, 1
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()


def random_word(rng: random.Random, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    return Word(tuple(rng.choice("XY") for _ in range(length)))


class NormalForm(BivariatePoly):
    """Reduced element of the presented algebra over its active monomial basis."""

    @classmethod
    def one(cls, ring: RingDescriptor) -> "NormalForm":
        return cls(ring, (((0, 0), ring.one()),))


WordTerms = Tuple[Tuple[Word, RingElement], ...]


def _format_word_terms(terms: WordTerms) -> str:
    if not terms:
        return "0"
    parts: List[str] = []
    for word, c in terms:
        negative, magnitude = split_coefficient(c)
        text = word.format()
        if text == "1":
            body = magnitude
        else:
            body = text if magnitude == "1" else f"{magnitude}*{text}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class Relation:
    """lhs = rhs with lhs a combination of words and rhs an ordered table."""
    label: str
    lhs: WordTerms
    rhs: BivariatePoly

    def lhs_matrix(self, pair: CompanionPair) -> Matrix:
        result = Matrix.zeros(pair.ring, pair.n, pair.n)
        for word, c in self.lhs:
            result = result + word.evaluate(pair.C, pair.D) * c
        return result

    def rhs_matrix(self, pair: CompanionPair) -> Matrix:
        return self.rhs.evaluate(pair.C, pair.D)

    def format(self) -> str:
        return f"{_format_word_terms(self.lhs)} = {self.rhs.format()}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "lhs": [{"word": w.format(), "coeff": format_element(c)} for w, c in self.lhs],
            "rhs": self.rhs.to_table(),
            "text": self.format(),
        }


@dataclass(frozen=True)
class PresentationDoc:
    """Generators X, Y and the relations of the chosen variant."""
    variant: Variant
    ring: RingDescriptor
    n: int
    relations: Tuple[Relation, ...]
    generators: Tuple[str, str] = ("X", "Y")
    h: Optional[Poly] = None

    def to_text(self) -> str:
        width = max(len(r.label) for r in self.relations) + 2
        lines = [
            f"Presentation ({self.variant.value}) over {self.ring}, n = {self.n}",
            f"Generators: {', '.join(self.generators)}",
            "Relations:",
        ]
        for relation in self.relations:
            lines.append(f"  {('[' + relation.label + ']').ljust(width)} {relation.format()}")
        return "\n".join(lines)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant.value,
            "ring": self.ring.spec,
            "n": self.n,
            "generators": list(self.generators),
            "relations": [r.to_dict() for r in self.relations],
            "h": poly_dict(self.h),
        }


# =============================================================================
# Preconditions and emission
# =============================================================================

def check_preconditions(pair: CompanionPair, variant: Variant) -> None:
    """Raise DomainError naming the failed unit test for the variant."""
    ring = pair.ring
    if variant in (Variant.FULL, Variant.FULL_CONSTANT_S):
        res = resultant(pair.f, pair.g)
        if not is_unit(res):
            raise DomainError(f"{variant.value} presentation needs Res(f,g) to be a unit; Res(f,g) = {res} in {ring}")
        if variant is Variant.FULL_CONSTANT_S and not (pair.s.degree == 0 and is_unit(pair.s.coeff(0))):
            raise DomainError(f"{variant.value} presentation needs g - f to be a constant unit; g - f = {pair.s}")
    elif not (ring.is_field or ring.kind is RingKind.INTEGERS):
        raise DomainError(f"subalgebra presentation needs Z, Q or GF(p), not {ring}")


def choose_variant(pair: CompanionPair) -> Variant:
    """Most specific variant whose preconditions hold."""
    for variant in (Variant.FULL_CONSTANT_S, Variant.FULL, Variant.SUBALGEBRA):
        try:
            check_preconditions(pair, variant)
        except DomainError:
            continue
        return variant
    raise DomainError(f"no presentation variant applies over {pair.ring}: Res(f,g) is not a unit")


def _x_word_terms(p: Poly, shift: int = 0, y: bool = False) -> WordTerms:
    return tuple(
        (Word(("X",) * (k + shift) + (("Y",) if y else ())), c)
        for k, c in enumerate(p.coeffs)
        if not c.is_zero()
    )


def emit_presentation(pair: CompanionPair, variant: Variant) -> PresentationDoc:
    """Relations f(X) = 0, g(Y) = 0, the swap relations for j = 1..n-1 and, for
    the subalgebra variant, h(X)(X - Y) = 0."""
    check_preconditions(pair, variant)
    ring, n = pair.ring, pair.n
    zero = BivariatePoly(ring)
    relations = [
        Relation(LABEL_F_RELATION, _x_word_terms(pair.f), zero),
        Relation(
            LABEL_G_RELATION,
            tuple((Word.monomial(0, k), c) for k, c in enumerate(pair.g.coeffs) if not c.is_zero()),
            zero,
        ),
    ]
    sequence = p_sequence(pair)
    for j in range(1, n):
        swap = Word(("Y",) * j + ("X",))
        if variant is Variant.FULL_CONSTANT_S:
            lhs = ((swap, ring.one()), (Word.monomial(j, 1), ring.one()))
            rhs = BivariatePoly(ring, (((j + 1, 0), ring.one()), ((0, j + 1), ring.one())))
        else:
            lhs = ((swap, ring.one()),)
            rhs = sequence.P[j]
        relations.append(Relation(f"{LABEL_SWAP_PREFIX}{j}", lhs, rhs))

    h = None
    if variant is Variant.SUBALGEBRA:
        h = rank_and_basis(pair).h
        lhs = _x_word_terms(h, shift=1) + tuple((w, -c) for w, c in _x_word_terms(h, y=True))
        relations.append(Relation(LABEL_H_RELATION, lhs, zero))
    return PresentationDoc(variant=variant, ring=ring, n=n, relations=tuple(relations), h=h)


# =============================================================================
# Rewriting
# =============================================================================

class Rewriter:
    """Left-to-right word reduction for one pair and variant."""

    def __init__(self, pair: CompanionPair, variant: Variant):
        check_preconditions(pair, variant)
        self.pair = pair
        self.variant = variant
        self.ring = pair.ring
        self.n = pair.n
        self._p = p_sequence(pair).p
        self._x_cache: Dict[int, Tuple[RingElement, ...]] = {}
        self._y_cache: Dict[int, Tuple[RingElement, ...]] = {}
        self._h: Optional[Poly] = None
        if variant is Variant.SUBALGEBRA:
            report = rank_and_basis(pair)
            self._h = report.h
            self.active: Tuple[Monomial, ...] = report.basis_monomials
        else:
            self.active = tuple((i, j) for j in range(self.n) for i in range(self.n))

    def _power_mod(self, cache: Dict[int, Tuple[RingElement, ...]], modulus: Poly, e: int) -> Tuple[RingElement, ...]:
        # coefficients of T^e reduced modulo the monic polynomial ``modulus``
        if e in cache:
            return cache[e]
        zero, one = self.ring.zero(), self.ring.one()
        if e < self.n:
            value = tuple(one if k == e else zero for k in range(self.n))
        else:
            prev = self._power_mod(cache, modulus, e - 1)
            top = prev[-1]
            value = tuple(
                (prev[k - 1] if k > 0 else zero) - modulus.coeff(k) * top for k in range(self.n)
            )
        cache[e] = value
        return value

    def _add(self, acc: Dict[Monomial, RingElement], a: int, b: int, c: RingElement) -> None:
        if c.is_zero():
            return
        xs = self._power_mod(self._x_cache, self.pair.f, a)
        ys = self._power_mod(self._y_cache, self.pair.g, b)
        for k, xc in enumerate(xs):
            if xc.is_zero():
                continue
            for l, yc in enumerate(ys):
                if yc.is_zero():
                    continue
                acc[(k, l)] = acc.get((k, l), self.ring.zero()) + c * xc * yc

    def _times_letter(self, acc: Dict[Monomial, RingElement], letter: str) -> Dict[Monomial, RingElement]:
        out: Dict[Monomial, RingElement] = {}
        for (a, b), c in acc.items():
            if c.is_zero():
                continue
            if letter == "Y":
                self._add(out, a, b + 1, c)
            elif b == 0:
                self._add(out, a + 1, 0, c)
            else:
                for k, pc in enumerate(self._p[b].coeffs):
                    self._add(out, a + k + 1, 0, c * pc)
                    self._add(out, a + k, 1, -(c * pc))
                self._add(out, a, b + 1, c)
        if self._h is not None:
            self._apply_h_relation(out)
        return out

    def _apply_h_relation(self, acc: Dict[Monomial, RingElement]) -> None:
        # X^a Y^b = X^{a+1} Y^{b-1} + sum h_t X^{a-k+t+1} Y^{b-1} - sum h_t X^{a-k+t} Y^b
        k = self._h.degree
        while True:
            pending = [(b, a) for (a, b), c in acc.items() if b >= 1 and a >= k and not c.is_zero()]
            if not pending:
                return
            b, a = max(pending)
            c = acc.pop((a, b))
            self._add(acc, a + 1, b - 1, c)
            for t in range(k):
                h_t = self._h.coeff(t)
                if h_t.is_zero():
                    continue
                self._add(acc, a - k + t + 1, b - 1, c * h_t)
                self._add(acc, a - k + t, b, -(c * h_t))

    def reduce_from(self, start: NormalForm, word: Word) -> NormalForm:
        """Normal form of start * word."""
        acc = start.as_dict()
        for letter in word.letters:
            acc = self._times_letter(acc, letter)
        return NormalForm(self.ring, tuple(acc.items()))

    def reduce(self, word: Word) -> NormalForm:
        return self.reduce_from(NormalForm.one(self.ring), word)


@lru_cache(maxsize=32)
def get_rewriter(pair: CompanionPair, variant: Variant) -> Rewriter:
    return Rewriter(pair, variant)


def reduce_word(word: Word, pair: CompanionPair, variant: Variant) -> NormalForm:
    """Normal form of ``word`` in the presented algebra."""
    return get_rewriter(pair, variant).reduce(word)


def evaluate_normal_form(nf: BivariatePoly, pair: CompanionPair) -> Matrix:
    """Sum of coeff(i, j) * C^i D^j."""
    result = Matrix.zeros(pair.ring, pair.n, pair.n)
    for (i, j), c in nf.terms:
        result = result + pair.monomial(i, j) * c
    return result


# =============================================================================
# Verification
# =============================================================================

def _fail(pair: CompanionPair, variant: Variant, message: str, word: Optional[Word] = None) -> InvariantViolation:
    logging.error(f"Presentation check failed ({variant.value}): {message}")
    dump = {"ring": pair.ring.spec, "f": str(pair.f), "g": str(pair.g), "variant": variant.value}
    if word is not None:
        dump["word"] = word.format()
    return InvariantViolation(message, dump=dump)


def _basis_rank(pair: CompanionPair, active: Sequence[Monomial]) -> int:
    rows = [vectorize_column_major(pair.monomial(i, j)) for i, j in active]
    coordinates = Matrix.from_rows(pair.ring, rows, cols=pair.n * pair.n)
    if pair.ring.is_domain:
        return rank(coordinates)
    # Z/m composite: a square coordinate matrix is a basis iff its det is a unit
    lifted = CompanionPair.build(lift_monic(pair.f), lift_monic(pair.g))
    lifted_rows = [vectorize_column_major(lifted.monomial(i, j)) for i, j in active]
    det = det_fraction_free(Matrix.from_rows(lifted.ring, lifted_rows))
    return len(active) if is_unit(reduce_hom(det, pair.ring)) else 0


def verify_presentation(
    pair: CompanionPair,
    variant: Variant,
    trials: int = DEFAULT_TRIALS,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    seed: int = 0,
) -> PresentationCheckReport:
    """Check relations, soundness on random words, an associativity proxy,
    idempotence on basis monomials and independence of the basis."""
    rewriter = get_rewriter(pair, variant)
    doc = emit_presentation(pair, variant)
    rng = random.Random(seed)

    for relation in doc.relations:
        if relation.lhs_matrix(pair) != relation.rhs_matrix(pair):
            raise _fail(pair, variant, f"relation {relation.label} fails in matrices: {relation.format()}")

    if variant is Variant.FULL_CONSTANT_S:
        sequence = p_sequence(pair)
        ring = pair.ring
        for j in range(1, pair.n):
            specialized = sequence.P[j] + BivariatePoly(
                ring, (((j, 1), ring.one()), ((j + 1, 0), -ring.one()), ((0, j + 1), -ring.one()))
            )
            if not specialized.is_zero():
                raise _fail(pair, variant, f"P_{j} is not the constant-s specialization")

    active = set(rewriter.active)
    for i, j in rewriter.active:
        if rewriter.reduce(Word.monomial(i, j)) != NormalForm.monomial(pair.ring, i, j):
            raise _fail(pair, variant, "basis monomial is not in normal form", Word.monomial(i, j))

    splits = 0
    for _ in range(trials):
        word = random_word(rng, max_len)
        nf = rewriter.reduce(word)
        if any(mono not in active for mono in nf.monomials()):
            raise _fail(pair, variant, "normal form leaves the active basis", word)
        if evaluate_normal_form(nf, pair) != word.evaluate(pair.C, pair.D):
            raise _fail(pair, variant, "normal form does not evaluate to the word's matrix", word)
        left, right = word.split(rng.randint(0, len(word)))
        head = rewriter.reduce(left)
        composed = NormalForm(pair.ring)
        for (i, j), c in rewriter.reduce(right).terms:
            composed = composed + rewriter.reduce_from(head, Word.monomial(i, j)).scale(c)
        if composed != nf:
            raise _fail(pair, variant, "reduction is not compatible with concatenation", word)
        splits += 1

    expected = pair.n * pair.n if variant is not Variant.SUBALGEBRA else len(rewriter.active)
    basis_rank = _basis_rank(pair, rewriter.active)
    if basis_rank != len(rewriter.active) or len(rewriter.active) != expected:
        raise _fail(pair, variant, f"basis monomials have rank {basis_rank}, expected {expected}")

    logging.info(f"Presentation ({variant.value}) verified on {trials} words for f={pair.f}, g={pair.g}")
    return PresentationCheckReport(
        variant=variant.value,
        relations_checked=len(doc.relations),
        words_checked=trials,
        splits_checked=splits,
        basis_size=len(rewriter.active),
        basis_rank=basis_rank,
        expected_dimension=expected,
        passed=True,
    )
