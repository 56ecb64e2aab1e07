"""Univariate exact polynomials.

Coefficients are stored in ascending degree with trailing zeros trimmed. The
zero polynomial has no coefficients and degree -1.

Resultants use the Sylvester convention Res(f, g) = lc(f)^deg(g) * prod g(a)
over the roots a of f; for monic f of degree n this is prod g(a_i).
"""

import json
import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Any, Dict, List, Tuple, Union

from .errors import DomainError, InvariantViolation, ParseError, RingMismatchError
from .matrices import Matrix, det_fraction_free
from .rings import (
    INTEGERS,
    RATIONALS,
    RingDescriptor,
    RingElement,
    RingKind,
    divide_exact,
    format_element,
    inverse,
    is_unit,
    lift,
    parse_element,
    random_element,
    reduce_hom,
)


@dataclass(frozen=True, eq=False)
class Poly:
    """Polynomial with coefficients in a single ring, index i = coefficient of X^i."""
    ring: RingDescriptor
    coeffs: Tuple[RingElement, ...] = ()

    def __post_init__(self) -> None:
        values = [self.ring.element(c) for c in self.coeffs]
        while values and values[-1].is_zero():
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "Poly":
        return Poly(ring, ())

    @classmethod
    def constant(cls, ring: RingDescriptor, value: Any) -> "Poly":
        return Poly(ring, (ring.element(value),))

    @classmethod
    def monomial(cls, ring: RingDescriptor, k: int, value: Any = 1) -> "Poly":
        return Poly(ring, (ring.zero(),) * k + (ring.element(value),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> RingElement:
        if not self.coeffs:
            return self.ring.zero()
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coeff(self, i: int) -> RingElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def _check(self, other: "Poly") -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine polynomials over {self.ring} and {other.ring}")

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    def __neg__(self) -> "Poly":
        return Poly(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Poly", RingElement, int]) -> "Poly":
        if isinstance(other, (RingElement, int)):
            c = self.ring.element(other)
            return Poly(self.ring, tuple(c * a for a in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.ring)
        out = [self.ring.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.ring, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.constant(self.ring, 1)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return Poly(self.ring, (self.ring.zero(),) * k + self.coeffs)

    def evaluate(self, x: RingElement) -> RingElement:
        result = self.ring.zero()
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def reduce_to(self, target: RingDescriptor) -> "Poly":
        """Coefficient-wise image under the canonical homomorphism into target."""
        return type(self)(target, tuple(reduce_hom(c, target) for c in self.coeffs))

    def as_poly(self) -> "Poly":
        return Poly(self.ring, self.coeffs)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.ring.spec}, {format_poly(self)})"


@dataclass(frozen=True, eq=False)
class MonicPoly(Poly):
    """Polynomial of degree >= 1 whose leading coefficient is the ring's 1."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.degree < 1:
            raise DomainError(f"monic polynomial must have degree >= 1, got {format_poly(self)}")
        if not self.leading.is_one():
            raise DomainError(f"{format_poly(self)} is not monic over {self.ring}")


def as_monic(p: Poly) -> MonicPoly:
    """Re-tag a polynomial as MonicPoly, validating monicity."""
    if isinstance(p, MonicPoly):
        return p
    return MonicPoly(p.ring, p.coeffs)


def make_monic(p: Poly) -> Poly:
    """Divide by the leading coefficient (which must be a unit)."""
    if p.is_zero():
        return p
    return p * inverse(p.leading)


# =============================================================================
# Arithmetic operations
# =============================================================================

def poly_sub(g: MonicPoly, f: MonicPoly) -> Poly:
    """s = g - f for monic polynomials of the same degree n; deg s <= n - 1."""
    if g.ring != f.ring:
        raise RingMismatchError(f"g over {g.ring} and f over {f.ring}")
    if g.degree != f.degree:
        raise DomainError(f"degree mismatch: deg g = {g.degree}, deg f = {f.degree}")
    return (g - f).as_poly()


def poly_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    """Long division by b whose leading coefficient is a unit."""
    a._check(b)
    if b.is_zero():
        raise DomainError("polynomial division by zero")
    if not is_unit(b.leading):
        raise DomainError(f"leading coefficient {b.leading} of the divisor is not a unit in {b.ring}")
    lead_inv = inverse(b.leading)
    remainder = list(a.coeffs)
    quotient = [a.ring.zero()] * max(len(remainder) - len(b.coeffs) + 1, 0)
    for k in range(len(remainder) - len(b.coeffs), -1, -1):
        c = remainder[k + b.degree] * lead_inv
        quotient[k] = c
        if c.is_zero():
            continue
        for i, bc in enumerate(b.coeffs):
            remainder[k + i] = remainder[k + i] - c * bc
    return Poly(a.ring, tuple(quotient)), Poly(a.ring, tuple(remainder))


def poly_mod(a: Poly, b: Poly) -> Poly:
    return poly_divmod(a, b)[1]


def poly_divide_exact(f: Poly, d: Poly) -> Poly:
    """Quotient h with f = h * d; raises DomainError on a nonzero remainder.

    The divisor's leading coefficient need not be a unit: each quotient
    coefficient only has to exist exactly (so X^2 - 1 / (2X - 2) fails over Z).
    """
    f._check(d)
    if d.is_zero():
        raise DomainError("polynomial division by zero")
    remainder = list(f.coeffs)
    quotient = [f.ring.zero()] * max(len(remainder) - len(d.coeffs) + 1, 0)
    for k in range(len(remainder) - len(d.coeffs), -1, -1):
        top = remainder[k + d.degree]
        if top.is_zero():
            continue
        try:
            c = divide_exact(top, d.leading)
        except DomainError as e:
            raise DomainError(f"{format_poly(d)} does not divide {format_poly(f)}") from e
        quotient[k] = c
        for i, dc in enumerate(d.coeffs):
            remainder[k + i] = remainder[k + i] - c * dc
    if any(not r.is_zero() for r in remainder):
        raise DomainError(f"{format_poly(d)} does not divide {format_poly(f)}")
    return Poly(f.ring, tuple(quotient))


def poly_divides(d: Poly, f: Poly) -> bool:
    try:
        poly_divide_exact(f, d)
    except DomainError:
        return False
    return True


def poly_eval_matrix(p: Poly, a: Matrix) -> Matrix:
    """Horner evaluation p(A) for a square matrix A over the same ring."""
    if not a.is_square:
        raise DomainError(f"cannot evaluate a polynomial at a {a.rows}x{a.cols} matrix")
    if p.ring != a.ring:
        raise RingMismatchError(f"polynomial over {p.ring} evaluated at a matrix over {a.ring}")
    identity = Matrix.identity(a.ring, a.rows)
    result = Matrix.zeros(a.ring, a.rows, a.rows)
    for c in reversed(p.coeffs):
        result = result @ a + identity * c
    return result


def content(p: Poly) -> int:
    """Nonnegative gcd of the coefficients of an integer polynomial."""
    g = 0
    for c in p.coeffs:
        g = int_gcd(g, c.value)
    return g


def primitive_part(p: Poly) -> Poly:
    """p / content(p) with positive leading coefficient (Z only)."""
    if p.is_zero():
        return p
    c = content(p)
    sign = -1 if p.leading.value < 0 else 1
    return Poly(p.ring, tuple(p.ring.element(x.value // c * sign) for x in p.coeffs))


def _field_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, poly_mod(a, b)
    return make_monic(a)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """gcd over Q / GF(p) (monic) or Z (primitive, positive leading coefficient)."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    ring = f.ring
    if ring.is_field:
        return _field_gcd(f, g)
    if ring.kind is RingKind.INTEGERS:
        over_q = _field_gcd(primitive_part(f).reduce_to(RATIONALS), primitive_part(g).reduce_to(RATIONALS))
        denominators = 1
        for c in over_q.coeffs:
            denominators = denominators * c.value.denominator // int_gcd(denominators, c.value.denominator)
        scaled = Poly(INTEGERS, tuple(INTEGERS.element(c.value * denominators) for c in over_q.coeffs))
        return primitive_part(scaled)
    if ring.kind is RingKind.INTEGERS_MOD:
        raise DomainError(f"gcd undefined over non-domain {ring}")
    raise DomainError(f"polynomial gcd is not supported over {ring}")


# =============================================================================
# Resultants
# =============================================================================

def _sylvester(f: Poly, g: Poly) -> Matrix:
    m, n = f.degree, g.degree
    size = m + n
    ring = f.ring
    rows: List[List[RingElement]] = []
    for poly, copies in ((f, n), (g, m)):
        descending = list(reversed(poly.coeffs))
        for shift in range(copies):
            row = [ring.zero()] * size
            row[shift:shift + len(descending)] = descending
            rows.append(row)
    return Matrix.from_rows(ring, rows, cols=size)


def sylvester_matrix(f: MonicPoly, g: MonicPoly) -> Matrix:
    """2n x 2n Sylvester matrix: n shifted copies of f, then n shifted copies of g.

    Coefficients run from the leading term down, so det = prod g(a_i) over the
    roots a_i of f.
    """
    if f.ring != g.ring:
        raise RingMismatchError(f"f over {f.ring} and g over {g.ring}")
    if f.degree != g.degree or f.degree < 1:
        raise DomainError(f"Sylvester matrix needs equal degrees >= 1, got {f.degree} and {g.degree}")
    return _sylvester(f, g)


def euclidean_resultant(a: Poly, b: Poly) -> RingElement:
    """Resultant over a field by the Euclidean remainder sequence."""
    ring = a.ring
    if not ring.is_field:
        raise DomainError(f"Euclidean resultant needs a field, not {ring}")
    if a.is_zero() or b.is_zero():
        return ring.zero()
    if a.degree == 0:
        return a.leading ** b.degree
    result = ring.one()
    while True:
        m, k = a.degree, b.degree
        if k == 0:
            return result * b.leading ** m
        r = poly_mod(a, b)
        if r.is_zero():
            return ring.zero()
        if (m * k) % 2:
            result = -result
        result = result * b.leading ** (m - r.degree)
        a, b = b, r


def resultant(f: MonicPoly, g: MonicPoly) -> RingElement:
    """Res(f, g) as a fraction-free Sylvester determinant.

    Over fields the Euclidean resultant is computed as well, and over Z the
    same check runs over Q; disagreement raises InvariantViolation. Composite
    Z/m is handled by lifting coefficients to Z and reducing the result.
    """
    sylvester = sylvester_matrix(f, g)
    ring = f.ring
    if not ring.is_domain:
        lifted = _sylvester(_lift_poly(f), _lift_poly(g))
        return reduce_hom(det_fraction_free(lifted), ring)
    value = det_fraction_free(sylvester)
    if ring.is_field:
        check, compared = euclidean_resultant(f, g), value
    elif ring.kind is RingKind.INTEGERS:
        check = euclidean_resultant(f.reduce_to(RATIONALS), g.reduce_to(RATIONALS))
        compared = reduce_hom(value, RATIONALS)
    else:
        return value
    if check != compared:
        _resultant_mismatch(f, g, value, check)
    return value


def _resultant_mismatch(f: Poly, g: Poly, sylvester: RingElement, euclid: RingElement) -> None:
    logging.error(f"Resultant mismatch for f={f}, g={g}: Sylvester {sylvester}, Euclidean {euclid}")
    raise InvariantViolation(
        "Sylvester and Euclidean resultants disagree",
        dump={"ring": f.ring.spec, "f": str(f), "g": str(g), "sylvester": str(sylvester), "euclidean": str(euclid)},
    )


def _lift_poly(p: Poly) -> Poly:
    return Poly(INTEGERS, tuple(lift(c) for c in p.coeffs))


def lift_monic(p: MonicPoly) -> MonicPoly:
    """Integer lift of a monic polynomial over Z/m (representatives in [0, m))."""
    return as_monic(_lift_poly(p))


# =============================================================================
# Text grammar
# =============================================================================

_TERM_RE = re.compile(
    r"^(?P<coef>\([^()]*\)|\d+(?:/\d+)?i?|i)?(?P<star>\*)?(?P<var>x(?:\^(?P<exp>\d+))?)?$"
)


def _split_terms(text: str) -> List[Tuple[str, str]]:
    terms: List[Tuple[str, str]] = []
    depth = 0
    sign = "+"
    current = ""
    for index, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch in "+-" and depth == 0:
            if current or index > 0:
                terms.append((sign, current))
            sign, current = ch, ""
            continue
        current += ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    terms.append((sign, current))
    return terms


def parse_poly(text: str, ring: RingDescriptor) -> Poly:
    """Parse ``3*x^2 - x + 1`` style text, or ``{"coeffs": [c0, ..., cn]}`` JSON."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial")
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_poly_json(stripped, ring)
    normalized = stripped.replace("−", "-").replace(" ", "").lower()
    accum: Dict[int, RingElement] = {}
    for sign, term in _split_terms(normalized):
        if not term:
            raise ParseError(f"empty term in polynomial {text!r}")
        match = _TERM_RE.match(term)
        if not match or (match.group("coef") is None and match.group("var") is None):
            raise ParseError(f"invalid term {term!r} in polynomial {text!r}")
        if match.group("star") and (match.group("coef") is None or match.group("var") is None):
            raise ParseError(f"invalid term {term!r} in polynomial {text!r}")
        coef = parse_element(match.group("coef"), ring) if match.group("coef") else ring.one()
        if sign == "-":
            coef = -coef
        exponent = 0
        if match.group("var"):
            exponent = int(match.group("exp")) if match.group("exp") else 1
        accum[exponent] = accum.get(exponent, ring.zero()) + coef
    size = max(accum) + 1 if accum else 0
    return Poly(ring, tuple(accum.get(i, ring.zero()) for i in range(size)))


def _parse_poly_json(text: str, ring: RingDescriptor) -> Poly:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid polynomial JSON: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("coeffs"), list):
        raise ParseError('polynomial JSON must look like {"coeffs": [c0, ..., cn]}')
    coeffs = []
    for c in data["coeffs"]:
        if isinstance(c, bool) or not isinstance(c, (int, str)):
            raise ParseError(f"invalid JSON coefficient {c!r}; use integers or strings")
        coeffs.append(parse_element(str(c), ring))
    return Poly(ring, tuple(coeffs))


def parse_monic(text: str, ring: RingDescriptor) -> MonicPoly:
    """Parse and require a monic polynomial of degree >= 1."""
    return as_monic(parse_poly(text, ring))


def split_coefficient(c: RingElement) -> Tuple[bool, str]:
    """Split a coefficient into (negative, magnitude text) for term rendering."""
    value = c.value
    if c.ring.kind is RingKind.GAUSSIAN_INTEGERS:
        real, imag = value
        if imag == 0:
            return real < 0, str(abs(real))
        if real == 0:
            return imag < 0, f"({format_element(c.ring.element((0, abs(imag))))})"
        return False, f"({format_element(c)})"
    if isinstance(value, Fraction):
        return value < 0, str(abs(value))
    return value < 0, str(abs(value))


def format_poly(p: Poly, var: str = "x") -> str:
    """Render in descending degree, e.g. ``x^3 - 2*x + 1/2``; zero renders as ``0``."""
    if p.is_zero():
        return "0"
    parts: List[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c.is_zero():
            continue
        negative, magnitude = split_coefficient(c)
        if k == 0:
            body = magnitude
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if magnitude == "1" else f"{magnitude}*{power}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def random_monic(ring: RingDescriptor, n: int, rng: random.Random, bound: int = 9) -> MonicPoly:
    """Random monic polynomial of degree n with lower coefficients from random_element."""
    coeffs = [random_element(ring, rng, bound) for _ in range(n)] + [ring.one()]
    return MonicPoly(ring, tuple(coeffs))


def coefficient_strings(p: Poly) -> List[str]:
    """Ascending coefficient list as exact strings (JSON rendering)."""
    return [format_element(c) for c in p.coeffs]
