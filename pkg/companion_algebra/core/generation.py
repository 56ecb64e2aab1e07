"""Generation verdicts, the span-closure oracle and the commutant.

A family of companion matrices C(f_1), ..., C(f_k) generates M_n(R) exactly
when the f_i stay relatively prime modulo every maximal ideal of R. This
module turns that criterion into a decision procedure for each supported ring
and provides a brute-force closure oracle to check it against.
"""

import logging
from itertools import combinations
from math import gcd as int_gcd
from typing import List, Optional, Sequence, Tuple

from sympy import primefactors

from ..constants import HNF_FALLBACK_MAX_BOUND
from ..errors import DomainError, InvariantViolation, RingMismatchError
from ..matrices import Matrix, hermite_row_basis, lattice_contains, solve_kernel
from ..models import CommutantReport, GenerationVerdict, Obstruction, SpanClosureReport
from ..poly import MonicPoly, Poly, poly_gcd, resultant
from ..rings import INTEGERS, RingDescriptor, RingElement, RingKind, galois_field, is_unit, norm
from .pair import CompanionPair, companion


def _check_family(polys: Sequence[MonicPoly]) -> Tuple[RingDescriptor, int]:
    if len(polys) < 2:
        raise DomainError("generation needs at least two polynomials")
    ring, n = polys[0].ring, polys[0].degree
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatchError(f"mixed rings {ring} and {p.ring}")
        if p.degree != n:
            raise DomainError(f"mixed degrees {n} and {p.degree}")
    return ring, n


def _gcd_all(polys: Sequence[Poly]) -> Poly:
    d = polys[0]
    for p in polys[1:]:
        d = poly_gcd(d, p)
    return d


def _obstruction_at(polys: Sequence[Poly], p: int) -> Optional[Obstruction]:
    field = galois_field(p)
    d = _gcd_all([q.reduce_to(field) for q in polys])
    if d.degree >= 1:
        return Obstruction(prime=p, common_factor=d)
    return None


def _obstructions(polys: Sequence[Poly], primes: Sequence[int]) -> Tuple[Obstruction, ...]:
    found = (_obstruction_at(polys, p) for p in primes)
    return tuple(o for o in found if o is not None)


def generates_full(polys: Sequence[MonicPoly]) -> GenerationVerdict:
    """Decide whether the companion matrices of ``polys`` generate M_n(R)."""
    ring, _ = _check_family(polys)

    if ring.is_field:
        d = _gcd_all(polys)
        verdict = GenerationVerdict(generates=d.degree == 0, method="gcd", gcd=d)

    elif ring.kind is RingKind.INTEGERS_MOD:
        obstructions = _obstructions(polys, primefactors(ring.modulus))
        verdict = GenerationVerdict(generates=not obstructions, method="maximal-ideals", obstructions=obstructions)
        if len(polys) == 2:
            res = resultant(polys[0], polys[1])
            if is_unit(res) != verdict.generates:
                raise InvariantViolation(
                    "maximal-ideal verdict disagrees with the resultant unit test",
                    dump={"ring": ring.spec, "f": str(polys[0]), "g": str(polys[1]), "resultant": str(res)},
                )
            verdict = GenerationVerdict(
                generates=verdict.generates, method="maximal-ideals", resultant=res, obstructions=obstructions
            )

    elif ring.kind is RingKind.GAUSSIAN_INTEGERS:
        if len(polys) != 2:
            raise DomainError("generation over Z[i] is decided for exactly two polynomials")
        res = resultant(polys[0], polys[1])
        verdict = GenerationVerdict(generates=is_unit(res), method="resultant-unit", resultant=res)

    elif ring.kind is RingKind.INTEGERS:
        verdict = _generates_over_integers(polys)

    else:
        raise DomainError(f"generation is not supported over {ring}")

    logging.info(f"Generation over {ring}: {verdict.generates} ({verdict.method})")
    return verdict


def _generates_over_integers(polys: Sequence[MonicPoly]) -> GenerationVerdict:
    if len(polys) == 2:
        res = resultant(polys[0], polys[1])
        if res.is_zero():
            return GenerationVerdict(
                generates=False, method="resultant-unit", resultant=res, common_factor=poly_gcd(polys[0], polys[1])
            )
        obstructions = _obstructions(polys, primefactors(abs(res.value)))
        return GenerationVerdict(
            generates=is_unit(res), method="resultant-unit", resultant=res, obstructions=obstructions
        )

    pairwise = [resultant(a, b) for a, b in combinations(polys, 2)]
    nonzero = [abs(r.value) for r in pairwise if not r.is_zero()]
    if nonzero:
        common = 0
        for value in nonzero:
            common = int_gcd(common, value)
        obstructions = _obstructions(polys, primefactors(common))
        return GenerationVerdict(generates=not obstructions, method="candidate-primes", obstructions=obstructions)

    shared = _gcd_all(polys)
    if shared.degree >= 1:
        return GenerationVerdict(generates=False, method="hnf-constant", common_factor=shared,
                                 constant_generator=INTEGERS.zero())
    generator = constant_generator(polys)
    obstructions = _obstructions(polys, primefactors(abs(generator.value))) if not generator.is_zero() else ()
    return GenerationVerdict(
        generates=generator.is_one(), method="hnf-constant", obstructions=obstructions, constant_generator=generator
    )


def constant_generator(polys: Sequence[Poly]) -> RingElement:
    """Positive generator of (f_1, ..., f_k) intersected with Z.

    Uses the lattice spanned by X^k f_i for k < B, starting at B = 2n and
    doubling until the constant generator repeats across two rounds.
    """
    n = polys[0].degree
    bound = 2 * n
    previous = None
    while True:
        current = _constant_in_lattice(polys, bound)
        logging.debug(f"HNF constant generator at bound {bound}: {current}")
        if previous is not None and current == previous:
            return current
        if bound >= HNF_FALLBACK_MAX_BOUND:
            logging.warning(f"Constant generator did not stabilize below bound {bound}; using {current}")
            return current
        previous = current
        bound *= 2


def _constant_in_lattice(polys: Sequence[Poly], bound: int) -> RingElement:
    width = polys[0].degree + bound
    rows = []
    for p in polys:
        for k in range(bound):
            shifted = p.shift(k)
            rows.append([shifted.coeff(width - 1 - col) for col in range(width)])
    hnf = hermite_row_basis(rows, INTEGERS)
    if hnf.pivot_columns and hnf.pivot_columns[-1] == width - 1:
        return hnf.basis[hnf.rank - 1, width - 1]
    return INTEGERS.zero()


# =============================================================================
# Closure oracle
# =============================================================================

def _flat(m: Matrix) -> List:
    return list(m.entries)


def _unflat(ring: RingDescriptor, n: int, row: Sequence) -> Matrix:
    return Matrix(ring, n, n, tuple(row))


def _closure(generators: Sequence[Matrix], ring: RingDescriptor, n: int):
    hnf = hermite_row_basis([_flat(Matrix.identity(ring, n))], ring)
    rounds = 0
    while True:
        rounds += 1
        current = [_unflat(ring, n, hnf.basis.row(i)) for i in range(hnf.rank)]
        rows = [_flat(b) for b in current]
        for b in current:
            for gen in generators:
                rows.append(_flat(b @ gen))
                rows.append(_flat(gen @ b))
        grown = hermite_row_basis(rows, ring)
        if grown.basis == hnf.basis:
            logging.debug(f"Closure reached a fixpoint after {rounds} rounds, rank {grown.rank}")
            return grown
        hnf = grown


def _span_is_closed(span, generators: Sequence[Matrix], ring: RingDescriptor, n: int) -> bool:
    for i in range(span.rank):
        b = _unflat(ring, n, span.basis.row(i))
        for gen in generators:
            if not lattice_contains(span, _flat(b @ gen)) or not lattice_contains(span, _flat(gen @ b)):
                return False
    return True


def span_closure_oracle(generators: Sequence[Matrix]) -> SpanClosureReport:
    """Unital subalgebra (or Z-order) generated by ``generators``, by brute force.

    Over a field the result is the dimension; over Z / Z[i] the HNF basis of the
    generated lattice. For two generators A, B the report also says whether the
    span of the A^i B^j (and of the B^j A^i) already equals that algebra.
    """
    if not generators:
        raise DomainError("span closure needs at least one generator")
    ring, n = generators[0].ring, generators[0].rows
    for gen in generators:
        if gen.ring != ring:
            raise RingMismatchError(f"mixed rings {ring} and {gen.ring}")
        if gen.rows != n or gen.cols != n:
            raise DomainError("generators must be square matrices of the same size")
    if not (ring.is_field or ring.has_norm):
        raise DomainError(f"span closure is supported over fields, Z and Z[i], not {ring}")

    algebra = _closure(generators, ring, n)
    products_dimension = closed = reversed_closed = None
    if len(generators) == 2:
        a, b = generators
        a_powers = [a.power(i) for i in range(n)]
        b_powers = [b.power(j) for j in range(n)]
        products = hermite_row_basis([_flat(x @ y) for y in b_powers for x in a_powers], ring)
        reversed_products = hermite_row_basis([_flat(y @ x) for y in b_powers for x in a_powers], ring)
        products_dimension = products.rank
        closed = products.basis == algebra.basis
        reversed_closed = reversed_products.basis == algebra.basis
        if closed != _span_is_closed(products, generators, ring, n):
            raise InvariantViolation("product span closure and algebra equality disagree")

    index = None
    if ring.has_norm and algebra.rank == n * n:
        index = 1
        for k, col in enumerate(algebra.pivot_columns):
            index *= norm(algebra.basis[k, col])
    return SpanClosureReport(
        size=n,
        dimension=algebra.rank,
        basis=algebra.basis,
        products_dimension=products_dimension,
        closed=closed,
        reversed_closed=reversed_closed,
        lattice_index=index,
    )


def pair_closure(pair: CompanionPair) -> SpanClosureReport:
    return span_closure_oracle([pair.C, pair.D])


def family_closure(polys: Sequence[MonicPoly]) -> SpanClosureReport:
    return span_closure_oracle([companion(p) for p in polys])


# =============================================================================
# Commutant
# =============================================================================

def commutant(pair: CompanionPair) -> CommutantReport:
    """Solve A C = C A, A D = D A over a field.

    The solution space is the scalars when f != g and R[C] (dimension n) when f = g.
    """
    ring, n = pair.ring, pair.n
    if not ring.is_field:
        raise DomainError(f"commutant is computed over fields, not {ring}")
    columns = []
    for k in range(n):
        for l in range(n):
            e = Matrix.basic(ring, n, k, l)
            columns.append(_flat(e @ pair.C - pair.C @ e) + _flat(e @ pair.D - pair.D @ e))
    operator = Matrix.from_columns(ring, columns)
    kernel = solve_kernel(operator)
    basis = tuple(_unflat(ring, n, v) for v in kernel)
    expected = n if pair.is_degenerate else 1
    if len(basis) != expected:
        raise InvariantViolation(
            f"commutant has dimension {len(basis)}, expected {expected}",
            dump={"ring": ring.spec, "f": str(pair.f), "g": str(pair.g)},
        )
    return CommutantReport(dimension=len(basis), expected=expected, basis=basis)
