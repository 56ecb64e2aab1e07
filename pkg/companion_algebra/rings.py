"""Exact scalar arithmetic over the supported coefficient rings.

Supported rings: the integers Z, the rationals Q, the residue rings Z/m
(GF(p) when m is prime) and the Gaussian integers Z[i].

Every element is stored in canonical form so that equality is structural:
rationals in lowest terms with positive denominator, residues in [0, m),
Gaussian integers as an (a, b) pair meaning a + bi.
"""

import random
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Optional, Tuple, Union

from sympy import isprime

from .errors import DomainError, ParseError, RingMismatchError

RawValue = Union[int, Fraction, Tuple[int, int]]


class RingKind(str, Enum):
    """Ring families understood by the package."""
    INTEGERS = "z"
    RATIONALS = "q"
    INTEGERS_MOD = "zmod"
    GAUSSIAN_INTEGERS = "zi"


@lru_cache(maxsize=256)
def _is_prime(m: int) -> bool:
    return bool(isprime(m))


@dataclass(frozen=True)
class RingDescriptor:
    """Tag identifying a coefficient ring.

    GF(p) is the residue ring Z/p with p prime; there is no separate kind.
    """
    kind: RingKind
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is RingKind.INTEGERS_MOD:
            if not isinstance(self.modulus, int) or isinstance(self.modulus, bool) or self.modulus < 2:
                raise DomainError(f"Z/m needs an integer modulus m >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise DomainError(f"ring {self.kind.value} takes no modulus")

    @property
    def is_field(self) -> bool:
        """True for Q and GF(p)."""
        if self.kind is RingKind.RATIONALS:
            return True
        return self.kind is RingKind.INTEGERS_MOD and _is_prime(self.modulus)

    @property
    def is_domain(self) -> bool:
        """True for integral domains (everything except composite Z/m)."""
        if self.kind is RingKind.INTEGERS_MOD:
            return _is_prime(self.modulus)
        return True

    @property
    def is_euclidean(self) -> bool:
        """True for Z, Z[i] and the fields."""
        return self.kind in (RingKind.INTEGERS, RingKind.GAUSSIAN_INTEGERS) or self.is_field

    @property
    def has_norm(self) -> bool:
        """True for the rings where the ideal-index norm is defined (Z, Z[i])."""
        return self.kind in (RingKind.INTEGERS, RingKind.GAUSSIAN_INTEGERS)

    @property
    def spec(self) -> str:
        """Ring spec string accepted by parse_ring_spec."""
        if self.kind is RingKind.INTEGERS_MOD:
            prefix = "gf" if self.is_field else "zmod"
            return f"{prefix}:{self.modulus}"
        return self.kind.value

    def __str__(self) -> str:
        if self.kind is RingKind.INTEGERS:
            return "Z"
        if self.kind is RingKind.RATIONALS:
            return "Q"
        if self.kind is RingKind.GAUSSIAN_INTEGERS:
            return "Z[i]"
        if self.is_field:
            return f"GF({self.modulus})"
        return f"Z/{self.modulus}"

    def zero(self) -> "RingElement":
        return self.element(0)

    def one(self) -> "RingElement":
        return self.element(1)

    def element(self, value: Any) -> "RingElement":
        """Build a canonical element of this ring.

        Python ints are accepted everywhere (image of Z). Fractions are accepted
        over Q and over Z/m when the denominator is invertible. Pairs (a, b)
        are accepted over Z[i].
        """
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used as element of {self}")
            return value
        if isinstance(value, bool):
            raise DomainError("booleans are not ring elements")
        return RingElement(self, _canonical(self, value))


def _canonical(ring: RingDescriptor, value: Any) -> RawValue:
    kind = ring.kind
    if kind is RingKind.INTEGERS:
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainError(f"{value} is not an integer")
            return int(value.numerator)
        if isinstance(value, int):
            return int(value)
    elif kind is RingKind.RATIONALS:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
    elif kind is RingKind.INTEGERS_MOD:
        m = ring.modulus
        if isinstance(value, Fraction):
            if gcd(value.denominator, m) != 1:
                raise DomainError(f"denominator of {value} is not invertible mod {m}")
            return value.numerator * pow(value.denominator, -1, m) % m
        if isinstance(value, int):
            return value % m
    elif kind is RingKind.GAUSSIAN_INTEGERS:
        if isinstance(value, int):
            return (int(value), 0)
        if isinstance(value, tuple) and len(value) == 2 and all(
            isinstance(part, int) and not isinstance(part, bool) for part in value
        ):
            return (int(value[0]), int(value[1]))
    raise DomainError(f"cannot interpret {value!r} as an element of {ring}")


@dataclass(frozen=True, eq=False)
class RingElement:
    """Immutable exact scalar tagged with its ring."""
    ring: RingDescriptor
    value: RawValue

    def _coerce(self, other: Any) -> Optional["RingElement"]:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.element(other)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == _canonical(self.ring, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.value))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        if self.ring.kind is RingKind.GAUSSIAN_INTEGERS:
            return self.value == (0, 0)
        return self.value == 0

    def is_one(self) -> bool:
        return self == 1

    def __add__(self, other: Any) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RingElement(self.ring, _add(self.ring, self.value, rhs.value))

    __radd__ = __add__

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, _neg(self.ring, self.value))

    def __sub__(self, other: Any) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> "RingElement":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> "RingElement":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RingElement(self.ring, _mul(self.ring, self.value, rhs.value))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            return inverse(self) ** (-exponent)
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"RingElement({self.ring.spec}, {format_element(self)})"


def _add(ring: RingDescriptor, a: RawValue, b: RawValue) -> RawValue:
    if ring.kind is RingKind.GAUSSIAN_INTEGERS:
        return (a[0] + b[0], a[1] + b[1])
    if ring.kind is RingKind.INTEGERS_MOD:
        return (a + b) % ring.modulus
    return a + b


def _neg(ring: RingDescriptor, a: RawValue) -> RawValue:
    if ring.kind is RingKind.GAUSSIAN_INTEGERS:
        return (-a[0], -a[1])
    if ring.kind is RingKind.INTEGERS_MOD:
        return (-a) % ring.modulus
    return -a


def _mul(ring: RingDescriptor, a: RawValue, b: RawValue) -> RawValue:
    if ring.kind is RingKind.GAUSSIAN_INTEGERS:
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    if ring.kind is RingKind.INTEGERS_MOD:
        return (a * b) % ring.modulus
    return a * b


# =============================================================================
# Predicates and norms
# =============================================================================

def is_unit(a: RingElement) -> bool:
    """Return True iff a is invertible in its ring."""
    kind = a.ring.kind
    if kind is RingKind.INTEGERS:
        return a.value in (1, -1)
    if kind is RingKind.RATIONALS:
        return a.value != 0
    if kind is RingKind.INTEGERS_MOD:
        return gcd(a.value, a.ring.modulus) == 1
    return a.value[0] ** 2 + a.value[1] ** 2 == 1


def inverse(a: RingElement) -> RingElement:
    """Multiplicative inverse; raises DomainError for non-units."""
    if not is_unit(a):
        raise DomainError(f"{a} is not a unit in {a.ring}")
    kind = a.ring.kind
    if kind is RingKind.INTEGERS:
        return a
    if kind is RingKind.RATIONALS:
        return a.ring.element(1 / a.value)
    if kind is RingKind.INTEGERS_MOD:
        return a.ring.element(pow(a.value, -1, a.ring.modulus))
    return conjugate(a)


def conjugate(a: RingElement) -> RingElement:
    """Complex conjugate over Z[i]; identity elsewhere."""
    if a.ring.kind is RingKind.GAUSSIAN_INTEGERS:
        return RingElement(a.ring, (a.value[0], -a.value[1]))
    return a


def norm(a: RingElement) -> int:
    """Index of the ideal generated by a: |a| over Z, x^2 + y^2 over Z[i]."""
    if not a.ring.has_norm:
        raise DomainError(f"norm is only defined over Z and Z[i], not {a.ring}")
    if a.is_zero():
        raise DomainError("norm of zero is not an index")
    if a.ring.kind is RingKind.INTEGERS:
        return abs(a.value)
    return a.value[0] ** 2 + a.value[1] ** 2


def euclidean_size(a: RingElement) -> int:
    """Euclidean function used for pivot selection (0 only for zero)."""
    if a.is_zero():
        return 0
    if a.ring.has_norm:
        return norm(a)
    return 1


# =============================================================================
# Division
# =============================================================================

def _round_div(x: int, n: int) -> int:
    # nearest integer to x/n for n > 0, halves rounded up
    return (2 * x + n) // (2 * n)


def euclidean_divmod(a: RingElement, b: RingElement) -> Tuple[RingElement, RingElement]:
    """Return (q, r) with a = q*b + r and size(r) < size(b).

    Z uses floor division; Z[i] rounds a/b to the nearest Gaussian integer;
    fields return an exact quotient with zero remainder.
    """
    b = a._coerce(b)
    if b.is_zero():
        raise DomainError("division by zero")
    ring = a.ring
    if ring.kind is RingKind.INTEGERS:
        q, r = divmod(a.value, b.value)
        return ring.element(q), ring.element(r)
    if ring.kind is RingKind.GAUSSIAN_INTEGERS:
        n = norm(b)
        num = a * conjugate(b)
        q = ring.element((_round_div(num.value[0], n), _round_div(num.value[1], n)))
        return q, a - q * b
    if ring.is_field:
        return a * inverse(b), ring.zero()
    raise DomainError(f"{ring} is not a Euclidean domain")


def divides(b: RingElement, a: RingElement) -> bool:
    """True iff b divides a (in a domain, or a Z/m with b a unit)."""
    try:
        divide_exact(a, b)
    except DomainError:
        return False
    return True


def divide_exact(a: RingElement, b: RingElement) -> RingElement:
    """Return q with q*b = a, or raise DomainError when no exact quotient exists."""
    b = a._coerce(b)
    if b.is_zero():
        if a.is_zero():
            raise DomainError("0/0 is undetermined")
        raise DomainError("division by zero")
    ring = a.ring
    if ring.kind is RingKind.INTEGERS_MOD:
        if not is_unit(b):
            raise DomainError(f"exact division by the zero divisor {b} in {ring} is ambiguous")
        return a * inverse(b)
    q, r = euclidean_divmod(a, b)
    if not r.is_zero():
        raise DomainError(f"{b} does not divide {a} in {ring}")
    return q


def unit_normal(a: RingElement) -> Tuple[RingElement, RingElement]:
    """Return (canonical associate, unit u) with canonical = u * a.

    Z: nonnegative. Z[i]: real part > 0 and imaginary part >= 0. Fields: 1.
    Composite Z/m has no canonical associate and returns (a, 1).
    """
    ring = a.ring
    one = ring.one()
    if a.is_zero():
        return a, one
    if ring.kind is RingKind.INTEGERS:
        return (a, one) if a.value > 0 else (-a, -one)
    if ring.kind is RingKind.GAUSSIAN_INTEGERS:
        for unit_value in ((1, 0), (0, 1), (-1, 0), (0, -1)):
            unit = ring.element(unit_value)
            candidate = unit * a
            if candidate.value[0] > 0 and candidate.value[1] >= 0:
                return candidate, unit
    if ring.is_field:
        return one, inverse(a)
    return a, one


def euclidean_gcd(a: RingElement, b: RingElement) -> RingElement:
    """Canonical greatest common divisor over Z, Z[i] or a field."""
    b = a._coerce(b)
    if not a.ring.is_euclidean:
        raise DomainError(f"gcd is not supported over {a.ring}")
    x, y = a, b
    while not y.is_zero():
        _, r = euclidean_divmod(x, y)
        x, y = y, r
    return unit_normal(x)[0]


def reduction_quotient(a: RingElement, pivot: RingElement) -> RingElement:
    """Quotient used to reduce a modulo a canonical pivot.

    Over Z this yields a remainder in [0, pivot); over Z[i] the rounded
    quotient; over fields the exact quotient (remainder zero).
    """
    return euclidean_divmod(a, pivot)[0]


# =============================================================================
# Homomorphisms
# =============================================================================

def reduce_hom(a: RingElement, target: RingDescriptor) -> RingElement:
    """Image of a under the canonical ring homomorphism into target.

    Supported maps: identity, Z -> any ring, Q -> Z/m (denominators coprime
    to m), Z/m -> Z/k for k dividing m.
    """
    source = a.ring
    if source == target:
        return a
    if source.kind is RingKind.INTEGERS:
        return target.element(a.value)
    if source.kind is RingKind.RATIONALS and target.kind is RingKind.INTEGERS_MOD:
        if gcd(a.value.denominator, target.modulus) != 1:
            raise DomainError(
                f"no canonical map {source} -> {target}: denominator "
                f"{a.value.denominator} is not invertible mod {target.modulus}"
            )
        return target.element(a.value)
    if (
        source.kind is RingKind.INTEGERS_MOD
        and target.kind is RingKind.INTEGERS_MOD
        and source.modulus % target.modulus == 0
    ):
        return target.element(a.value)
    raise DomainError(f"no canonical homomorphism {source} -> {target}")


def lift(a: RingElement) -> RingElement:
    """Integer representative of a residue (values in [0, m)); Z elements pass through."""
    if a.ring.kind is RingKind.INTEGERS:
        return a
    if a.ring.kind is RingKind.INTEGERS_MOD:
        return INTEGERS.element(a.value)
    raise DomainError(f"no integer lift for elements of {a.ring}")


# =============================================================================
# Construction helpers
# =============================================================================

INTEGERS = RingDescriptor(RingKind.INTEGERS)
RATIONALS = RingDescriptor(RingKind.RATIONALS)
GAUSSIAN_INTEGERS = RingDescriptor(RingKind.GAUSSIAN_INTEGERS)


def integers_mod(m: int) -> RingDescriptor:
    """Z/m for m >= 2."""
    return RingDescriptor(RingKind.INTEGERS_MOD, m)


def galois_field(p: int) -> RingDescriptor:
    """GF(p); raises DomainError when p is not prime."""
    if not isinstance(p, int) or p < 2 or not _is_prime(p):
        raise DomainError(f"GF(p) needs a prime p, got {p!r}")
    return RingDescriptor(RingKind.INTEGERS_MOD, p)


_RING_SPEC_RE = re.compile(r"^(?P<kind>z|q|zi|zmod|gf)(?::(?P<arg>\d+))?$")


def parse_ring_spec(text: str) -> RingDescriptor:
    """Parse ``z | q | zmod:<m> | gf:<p> | zi`` (case-insensitive)."""
    match = _RING_SPEC_RE.match(text.strip().lower()) if isinstance(text, str) else None
    if not match:
        raise ParseError(f"invalid ring spec {text!r}; expected z, q, zi, zmod:<m> or gf:<p>")
    kind, arg = match.group("kind"), match.group("arg")
    if kind in ("zmod", "gf"):
        if arg is None:
            raise ParseError(f"ring spec {text!r} needs a modulus, e.g. {kind}:5")
        modulus = int(arg)
        if modulus < 2:
            raise ParseError(f"modulus must be >= 2 in {text!r}")
        if kind == "gf" and not _is_prime(modulus):
            raise ParseError(f"gf:{modulus} is not a field ({modulus} is not prime); use zmod:{modulus}")
        return integers_mod(modulus)
    if arg is not None:
        raise ParseError(f"ring {kind} takes no modulus")
    return {"z": INTEGERS, "q": RATIONALS, "zi": GAUSSIAN_INTEGERS}[kind]


_INT_RE = re.compile(r"^[+-]?\d+$")
_RATIONAL_RE = re.compile(r"^(?P<num>[+-]?\d+)/(?P<den>\d+)$")
_GAUSSIAN_RE = re.compile(
    r"^(?:(?P<re>[+-]?\d+)(?=$|[+-]))?(?:(?P<sign>[+-])?(?P<im>\d*)i)?$"
)


def parse_element(text: str, ring: RingDescriptor) -> RingElement:
    """Parse a scalar literal: ``12``, ``-3``, ``p/q`` (Q only), ``(a+bi)`` (Z[i] only)."""
    raw = text.strip().replace("−", "-").replace(" ", "")
    if raw.startswith("(") and raw.endswith(")"):
        if ring.kind is not RingKind.GAUSSIAN_INTEGERS:
            raise ParseError(f"Gaussian coefficient {text!r} needs ring zi")
        return ring.element(_parse_gaussian(raw[1:-1]))
    if _INT_RE.match(raw):
        return ring.element(int(raw))
    match = _RATIONAL_RE.match(raw)
    if match:
        if ring.kind is not RingKind.RATIONALS:
            raise ParseError(f"rational coefficient {text!r} needs ring q")
        den = int(match.group("den"))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return ring.element(Fraction(int(match.group("num")), den))
    if ring.kind is RingKind.GAUSSIAN_INTEGERS and raw.endswith("i"):
        return ring.element(_parse_gaussian(raw))
    raise ParseError(f"invalid coefficient {text!r} for ring {ring}")


def _parse_gaussian(body: str) -> Tuple[int, int]:
    match = _GAUSSIAN_RE.match(body)
    if not body or not match or (match.group("re") is None and match.group("im") is None):
        raise ParseError(f"invalid Gaussian integer {body!r}; expected a+bi")
    real = int(match.group("re")) if match.group("re") is not None else 0
    imag = 0
    if match.group("im") is not None:
        if match.group("re") is not None and match.group("sign") is None:
            raise ParseError(f"invalid Gaussian integer {body!r}; expected a+bi")
        imag = int(match.group("im")) if match.group("im") else 1
        if match.group("sign") == "-":
            imag = -imag
    return (real, imag)


def format_element(a: RingElement) -> str:
    """Exact decimal rendering: ``7``, ``-1/2``, ``3-2i``."""
    value = a.value
    if a.ring.kind is RingKind.GAUSSIAN_INTEGERS:
        real, imag = value
        if imag == 0:
            return str(real)
        imag_text = {1: "i", -1: "-i"}.get(imag, f"{imag}i")
        if real == 0:
            return imag_text
        return f"{real}{imag_text}" if imag < 0 else f"{real}+{imag_text}"
    return str(value)


def random_element(ring: RingDescriptor, rng: random.Random, bound: int) -> RingElement:
    """Uniform-ish random element with coefficients in [-bound, bound]."""
    if ring.kind is RingKind.INTEGERS:
        return ring.element(rng.randint(-bound, bound))
    if ring.kind is RingKind.RATIONALS:
        return ring.element(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    if ring.kind is RingKind.INTEGERS_MOD:
        return ring.element(rng.randrange(ring.modulus))
    return ring.element((rng.randint(-bound, bound), rng.randint(-bound, bound)))


