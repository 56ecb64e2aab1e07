"""Companion matrices and the pair (C, D) built from two monic polynomials."""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

from ..errors import DomainError, RingMismatchError
from ..matrices import Matrix, Vector
from ..poly import MonicPoly, Poly, poly_eval_matrix, poly_sub
from ..rings import RingDescriptor, RingElement


def companion(f: MonicPoly) -> Matrix:
    """n x n companion matrix: ones on the subdiagonal, last column -f_0..-f_{n-1}."""
    n = f.degree
    if n < 2:
        raise DomainError(f"companion matrices need degree n >= 2, got {n}")
    ring = f.ring
    rows = [[ring.zero()] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = ring.one()
    for i in range(n):
        rows[i][n - 1] = -f.coeff(i)
    return Matrix.from_rows(ring, rows)


def coords(p: Poly, n: int) -> Vector:
    """Coordinates [p] of p in the basis 1, X, ..., X^(n-1)."""
    if p.degree >= n:
        raise DomainError(f"[p] needs deg p <= {n - 1}, got {p.degree}")
    return tuple(p.coeff(i) for i in range(n))


def from_coords(ring: RingDescriptor, vector: Sequence[RingElement]) -> Poly:
    """Polynomial whose coordinate vector is ``vector``."""
    return Poly(ring, tuple(vector))


@dataclass(frozen=True)
class CompanionPair:
    """Companion matrices C = C(f), D = C(g) of two monic degree-n polynomials.

    ``s`` is g - f and ``a`` holds a_1..a_n, the last row of s(D).
    """
    ring: RingDescriptor
    n: int
    f: MonicPoly
    g: MonicPoly
    C: Matrix
    D: Matrix
    s: Poly
    a: Tuple[RingElement, ...]

    @classmethod
    def build(cls, f: MonicPoly, g: MonicPoly) -> "CompanionPair":
        if f.ring != g.ring:
            raise RingMismatchError(f"f over {f.ring} and g over {g.ring}")
        if f.degree != g.degree:
            raise DomainError(f"f and g must have the same degree, got {f.degree} and {g.degree}")
        c, d = companion(f), companion(g)
        s = poly_sub(g, f)
        a = poly_eval_matrix(s, d).row(f.degree - 1)
        return cls(ring=f.ring, n=f.degree, f=f, g=g, C=c, D=d, s=s, a=a)

    @property
    def u_n(self) -> Matrix:
        """Row selector e_n^T for the last coordinate."""
        entries = [self.ring.zero()] * self.n
        entries[-1] = self.ring.one()
        return Matrix.from_rows(self.ring, [entries])

    @cached_property
    def c_powers(self) -> Tuple[Matrix, ...]:
        powers = [Matrix.identity(self.ring, self.n)]
        for _ in range(self.n):
            powers.append(powers[-1] @ self.C)
        return tuple(powers)

    @cached_property
    def d_powers(self) -> Tuple[Matrix, ...]:
        powers = [Matrix.identity(self.ring, self.n)]
        for _ in range(self.n):
            powers.append(powers[-1] @ self.D)
        return tuple(powers)

    def c_power(self, k: int) -> Matrix:
        return self.c_powers[k] if k < len(self.c_powers) else self.C.power(k)

    def d_power(self, k: int) -> Matrix:
        return self.d_powers[k] if k < len(self.d_powers) else self.D.power(k)

    def monomial(self, i: int, j: int) -> Matrix:
        """C^i D^j."""
        return self.c_power(i) @ self.d_power(j)

    @property
    def is_degenerate(self) -> bool:
        """True when f = g."""
        return self.s.is_zero()
