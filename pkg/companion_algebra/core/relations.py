"""Relations satisfied by a companion pair.

With s = g - f and a_j the (n, j) entry of s(D):

    p_0 = 1,  p_j = X p_{j-1} - a_j,
    P_j(X, Y) = p_j(X) (X - Y) + Y^{j+1},

and the identities p_j(C)(C - D) = D^j (C - D), D^j C = P_j(C, D) and
g(C) P = -f(D) hold, where P has columns [p_0], ..., [p_{n-1}].
"""

import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from ..constants import COORD_CHECK_TRIALS
from ..errors import DomainError, InvariantViolation
from ..matrices import Matrix, rank, solve_kernel, vectorize_column_major
from ..models import BasisReport, HAnnihilatorReport, PSequence, RelationsReport, SolveQReport
from ..poly import Poly, poly_divide_exact, poly_divides, poly_eval_matrix, poly_gcd, resultant
from ..rings import RingElement, RingKind, is_unit, random_element
from .bivariate import BivariatePoly
from .generation import pair_closure
from .pair import CompanionPair, coords, from_coords


def _violation(pair: CompanionPair, message: str, **details) -> InvariantViolation:
    logging.error(f"{message} (f={pair.f}, g={pair.g}, ring={pair.ring})")
    dump = {"ring": pair.ring.spec, "f": str(pair.f), "g": str(pair.g)}
    dump.update({k: str(v) for k, v in details.items()})
    return InvariantViolation(message, dump=dump)


def a_sequence(pair: CompanionPair) -> Tuple[RingElement, ...]:
    """a_1..a_n, checked against (C - D) D^(j-1) (C - D) = a_j (C - D)."""
    diff = pair.C - pair.D
    for j in range(1, pair.n + 1):
        lhs = diff @ pair.d_power(j - 1) @ diff
        if lhs != diff * pair.a[j - 1]:
            raise _violation(pair, f"(C-D) D^{j - 1} (C-D) != a_{j} (C-D)", j=j, a_j=pair.a[j - 1])
    return pair.a


def p_polynomials(pair: CompanionPair, a: Optional[Sequence[RingElement]] = None) -> Tuple[Poly, ...]:
    ring = pair.ring
    a = pair.a if a is None else a
    x = Poly.monomial(ring, 1)
    p: List[Poly] = [Poly.constant(ring, 1)]
    for j in range(1, pair.n):
        p.append(x * p[-1] - Poly.constant(ring, a[j - 1]))
    return tuple(p)


def big_p(p_j: Poly, j: int) -> BivariatePoly:
    """P_j(X, Y) = p_j(X)(X - Y) + Y^{j+1} as an ordered-monomial table."""
    ring = p_j.ring
    terms = [((0, j + 1), ring.one())]
    for k, c in enumerate(p_j.coeffs):
        terms.append(((k + 1, 0), c))
        terms.append(((k, 1), -c))
    return BivariatePoly(ring, tuple(terms))


def p_sequence(pair: CompanionPair) -> PSequence:
    """p_j and P_j for j = 0..n-1, with both defining identities verified."""
    p = p_polynomials(pair)
    big = tuple(big_p(p_j, j) for j, p_j in enumerate(p))
    diff = pair.C - pair.D
    for j, (p_j, big_j) in enumerate(zip(p, big)):
        if poly_eval_matrix(p_j, pair.C) @ diff != pair.d_power(j) @ diff:
            raise _violation(pair, f"p_{j}(C)(C-D) != D^{j}(C-D)", p_j=p_j)
        if pair.d_power(j) @ pair.C != big_j.evaluate(pair.C, pair.D):
            raise _violation(pair, f"D^{j} C != P_{j}(C, D)", P_j=big_j)
    return PSequence(p=p, P=big)


def particular_solution(pair: CompanionPair, p: Optional[Sequence[Poly]] = None) -> Matrix:
    """P = ([p_0] ... [p_{n-1}])."""
    p = p if p is not None else p_polynomials(pair)
    return Matrix.from_columns(pair.ring, [coords(p_j, pair.n) for p_j in p])


def relation_checks(pair: CompanionPair, a: Optional[Sequence[RingElement]] = None) -> Dict[str, bool]:
    """Evaluate each family of identities for the scalars ``a`` (default: the pair's own).

    Keys: ``a_scalars`` for (C-D) D^(j-1) (C-D) = a_j (C-D), ``p_relation`` for
    p_j(C)(C-D) = D^j (C-D), ``swap_relation`` for D^j C = P_j(C, D) and
    ``g_of_c_P`` for g(C) P = -f(D).
    """
    a = tuple(pair.a if a is None else a)
    p = p_polynomials(pair, a)
    diff = pair.C - pair.D
    checks = {
        "a_scalars": all(
            diff @ pair.d_power(j - 1) @ diff == diff * a[j - 1] for j in range(1, pair.n + 1)
        ),
        "p_relation": all(
            poly_eval_matrix(p_j, pair.C) @ diff == pair.d_power(j) @ diff for j, p_j in enumerate(p)
        ),
        "swap_relation": all(
            pair.d_power(j) @ pair.C == big_p(p_j, j).evaluate(pair.C, pair.D) for j, p_j in enumerate(p)
        ),
        "g_of_c_P": poly_eval_matrix(pair.g, pair.C) @ particular_solution(pair, p)
        == -poly_eval_matrix(pair.f, pair.D),
    }
    logging.debug(f"Relation checks for f={pair.f}, g={pair.g}: {checks}")
    return checks


def relations_report(pair: CompanionPair, strict: bool = True) -> RelationsReport:
    """a_j, p_j, P_j and the measured outcome of every identity relating them.

    With ``strict`` a failed identity raises InvariantViolation; otherwise it
    is only recorded in ``checks``.
    """
    p = p_polynomials(pair)
    sequence = PSequence(p=p, P=tuple(big_p(p_j, j) for j, p_j in enumerate(p)))
    checks = relation_checks(pair)
    failed = [name for name, ok in checks.items() if not ok]
    if failed and strict:
        raise _violation(pair, f"relations failed: {', '.join(failed)}")
    return RelationsReport(a=pair.a, sequence=sequence, checks=checks)


def solve_q(pair: CompanionPair) -> SolveQReport:
    """All Q with g(C) Q = -f(D) over a field: P plus columns from ker g(C).

    Every kernel direction placed in every column of P is sampled; each such Q
    must satisfy g(C) Q = -f(D) and q_j(C)(C - D) = D^j (C - D).
    """
    ring, n = pair.ring, pair.n
    if not ring.is_field:
        raise DomainError(f"solving for Q needs a field, not {ring}")
    p = p_polynomials(pair)
    particular = particular_solution(pair, p)
    g_c = poly_eval_matrix(pair.g, pair.C)
    target = -poly_eval_matrix(pair.f, pair.D)
    if g_c @ particular != target:
        raise _violation(pair, "g(C) P != -f(D)")

    kernel = tuple(solve_kernel(g_c))
    unique = not kernel
    res = resultant(pair.f, pair.g)
    if is_unit(res) != unique:
        raise _violation(pair, "uniqueness of Q disagrees with the resultant unit test", resultant=res)

    diff = pair.C - pair.D
    samples = 0
    for v in kernel:
        for j in range(n):
            columns = [list(particular.column(k)) for k in range(n)]
            columns[j] = [x + y for x, y in zip(columns[j], v)]
            q = Matrix.from_columns(ring, columns)
            if g_c @ q != target:
                raise _violation(pair, f"kernel shift in column {j} breaks g(C) Q = -f(D)")
            q_j = from_coords(ring, columns[j])
            if poly_eval_matrix(q_j, pair.C) @ diff != pair.d_power(j) @ diff:
                raise _violation(pair, f"q_{j}(C)(C-D) != D^{j}(C-D) for a sampled solution")
            samples += 1
    return SolveQReport(
        particular=particular,
        kernel=kernel,
        unique=unique,
        kernel_full=len(kernel) == n,
        samples_checked=samples,
    )


def basis_monomials(n: int, m: int) -> Tuple[Tuple[int, int], ...]:
    """(i, 0) for i < n, then (i, j) for 1 <= j <= n-1 and i < n - m."""
    return tuple([(i, 0) for i in range(n)] + [(i, j) for j in range(1, n) for i in range(n - m)])


def _ufd_check(pair: CompanionPair) -> None:
    ring = pair.ring
    if not (ring.is_field or ring.kind is RingKind.INTEGERS):
        raise DomainError(f"rank and basis need Z, Q or GF(p), not {ring}")


def rank_and_basis(pair: CompanionPair) -> BasisReport:
    """Rank n + (n-m)(n-1) of R<C,D> with m = deg gcd(f, g), and its monomial basis.

    The monomials must evaluate to independent matrices and the closure oracle
    must reach exactly that rank.
    """
    _ufd_check(pair)
    n = pair.n
    d = poly_gcd(pair.f, pair.g)
    m = d.degree
    h = poly_divide_exact(pair.f, d)
    expected = n + (n - m) * (n - 1)
    monomials = basis_monomials(n, m)
    coordinates = Matrix.from_rows(pair.ring, [vectorize_column_major(pair.monomial(i, j)) for i, j in monomials])
    independent_rank = rank(coordinates)
    if independent_rank != expected or len(monomials) != expected:
        raise _violation(pair, f"basis monomials have rank {independent_rank}, expected {expected}")
    closure = pair_closure(pair)
    if closure.dimension != expected:
        raise _violation(pair, f"closure oracle dimension {closure.dimension}, expected {expected}")
    return BasisReport(m=m, rank=expected, basis_monomials=monomials, h=h, gcd=d, closure_dimension=closure.dimension)


def h_annihilator_check(pair: CompanionPair) -> HAnnihilatorReport:
    """h(C) C = h(C) D for h = f / gcd(f, g)."""
    _ufd_check(pair)
    h = poly_divide_exact(pair.f, poly_gcd(pair.f, pair.g))
    h_c = poly_eval_matrix(h, pair.C)
    holds = h_c @ pair.C == h_c @ pair.D
    if not holds:
        raise _violation(pair, "h(C) C != h(C) D", h=h)
    return HAnnihilatorReport(h=h, holds=holds)


def _column(ring, vector) -> Matrix:
    return Matrix.from_columns(ring, [vector])


def coord_identity_checks(
    pair: CompanionPair,
    rng: Optional[random.Random] = None,
    trials: int = COORD_CHECK_TRIALS,
    pairs: Optional[Sequence[Tuple[Poly, Poly]]] = None,
    bound: int = 9,
) -> bool:
    """Coordinate identities for p, q of degree < n.

    p(C) = ([p] C[p] ... C^(n-1)[p]), p(C)[q] = q(C)[p], and p(C)[q] = 0
    exactly when f divides pq. Random pairs are drawn from ``rng``; explicit
    ones can be added through ``pairs``.
    """
    ring, n = pair.ring, pair.n
    rng = rng or random.Random(0)
    candidates: List[Tuple[Poly, Poly]] = list(pairs or [])
    for _ in range(trials):
        p = Poly(ring, tuple(random_element(ring, rng, bound) for _ in range(n)))
        q = Poly(ring, tuple(random_element(ring, rng, bound) for _ in range(n)))
        candidates.append((p, q))

    for p, q in candidates:
        p_c, q_c = poly_eval_matrix(p, pair.C), poly_eval_matrix(q, pair.C)
        vp, vq = _column(ring, coords(p, n)), _column(ring, coords(q, n))
        rebuilt = Matrix.from_columns(
            ring, [(pair.c_power(k) @ vp).column(0) for k in range(n)]
        )
        if rebuilt != p_c:
            raise _violation(pair, "p(C) is not rebuilt from its first column", p=p)
        lhs, rhs = p_c @ vq, q_c @ vp
        if lhs != rhs:
            raise _violation(pair, "p(C)[q] != q(C)[p]", p=p, q=q)
        if lhs.is_zero() != poly_divides(pair.f, p * q):
            raise _violation(pair, "p(C)[q] = 0 does not match f | pq", p=p, q=q)
    return True


def scalar_lemma_check(pair: CompanionPair, polys: Sequence[Poly]) -> int:
    """For p(C) whose last row is (0, ..., 0, *), assert p(C) is scalar.

    Returns how many of ``polys`` met the hypothesis.
    """
    n = pair.n
    qualifying = 0
    for p in polys:
        a = poly_eval_matrix(p, pair.C)
        if any(not a[n - 1, j].is_zero() for j in range(n - 1)):
            continue
        qualifying += 1
        if not a.is_scalar():
            raise _violation(pair, "matrix in R[C] with last row (0, ..., 0, *) is not scalar", p=p)
    return qualifying

