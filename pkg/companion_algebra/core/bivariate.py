"""Linear combinations of ordered monomials X^a Y^b.

The monomial X^a Y^b always means "X-part first, then Y-part", so tables of
this kind describe noncommutative polynomials whose terms are already in
ordered form (P_j, normal forms, relation right-hand sides).
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Tuple

from ..errors import RingMismatchError
from ..matrices import Matrix
from ..poly import Poly, split_coefficient
from ..rings import RingDescriptor, RingElement, format_element

Monomial = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class BivariatePoly:
    """Coefficient table over ordered monomials; zero entries are pruned."""
    ring: RingDescriptor
    terms: Tuple[Tuple[Monomial, RingElement], ...] = ()

    def __post_init__(self) -> None:
        merged: Dict[Monomial, RingElement] = {}
        for (a, b), c in self.terms:
            merged[(a, b)] = merged.get((a, b), self.ring.zero()) + self.ring.element(c)
        pruned = tuple(sorted((k, v) for k, v in merged.items() if not v.is_zero()))
        object.__setattr__(self, "terms", pruned)

    @classmethod
    def from_dict(cls, ring: RingDescriptor, mapping: Mapping[Monomial, Any]) -> "BivariatePoly":
        return cls(ring, tuple(mapping.items()))

    @classmethod
    def monomial(cls, ring: RingDescriptor, a: int, b: int, coeff: Any = 1) -> "BivariatePoly":
        return cls(ring, (((a, b), ring.element(coeff)),))

    @classmethod
    def from_x_poly(cls, p: Poly) -> "BivariatePoly":
        return cls(p.ring, tuple(((k, 0), c) for k, c in enumerate(p.coeffs)))

    @classmethod
    def from_y_poly(cls, p: Poly) -> "BivariatePoly":
        return cls(p.ring, tuple(((0, k), c) for k, c in enumerate(p.coeffs)))

    def as_dict(self) -> Dict[Monomial, RingElement]:
        return dict(self.terms)

    def coeff(self, a: int, b: int) -> RingElement:
        return self.as_dict().get((a, b), self.ring.zero())

    def monomials(self) -> List[Monomial]:
        return [k for k, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, self.terms))

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot add tables over {self.ring} and {other.ring}")
        return type(self)(self.ring, self.terms + other.terms)

    def __neg__(self) -> "BivariatePoly":
        return type(self)(self.ring, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Any) -> "BivariatePoly":
        factor = self.ring.element(c)
        return type(self)(self.ring, tuple((k, factor * v) for k, v in self.terms))

    def evaluate(self, x: Matrix, y: Matrix) -> Matrix:
        """Sum of c * x^a y^b."""
        n = x.rows
        result = Matrix.zeros(self.ring, n, n)
        x_powers: Dict[int, Matrix] = {}
        y_powers: Dict[int, Matrix] = {}
        for (a, b), c in self.terms:
            if a not in x_powers:
                x_powers[a] = x.power(a)
            if b not in y_powers:
                y_powers[b] = y.power(b)
            result = result + (x_powers[a] @ y_powers[b]) * c
        return result

    def format(self, x: str = "X", y: str = "Y") -> str:
        """Render highest total degree first, e.g. ``X^3 + Y^3 - X^2Y``."""
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
        parts: List[str] = []
        for (a, b), c in ordered:
            negative, magnitude = split_coefficient(c)
            mono = format_monomial(a, b, x, y)
            if mono == "1":
                body = magnitude
            else:
                body = mono if magnitude == "1" else f"{magnitude}*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def to_table(self) -> List[Dict[str, Any]]:
        """JSON coefficient table: [{"x": a, "y": b, "coeff": "..."}]."""
        return [{"x": a, "y": b, "coeff": format_element(c)} for (a, b), c in self.terms]

    def __str__(self) -> str:
        return self.format()


def format_monomial(a: int, b: int, x: str = "X", y: str = "Y") -> str:
    parts = []
    if a:
        parts.append(x if a == 1 else f"{x}^{a}")
    if b:
        parts.append(y if b == 1 else f"{y}^{b}")
    return "".join(parts) or "1"


def sum_tables(ring: RingDescriptor, tables: Iterable[BivariatePoly]) -> BivariatePoly:
    terms: List[Tuple[Monomial, RingElement]] = []
    for table in tables:
        terms.extend(table.terms)
    return BivariatePoly(ring, tuple(terms))
