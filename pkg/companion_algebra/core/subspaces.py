"""Common invariant subspaces of several companion matrices over a field."""

import logging
from typing import Optional, Sequence

from ..errors import DomainError, InvariantViolation
from ..matrices import Matrix, rank
from ..models import InvariantSubspace, InvariantSubspaceReport
from ..poly import MonicPoly, Poly, make_monic, poly_divides, poly_gcd
from .pair import companion, coords


def _subspace_basis(h: Poly, n: int):
    return tuple(coords(h.shift(k), n) for k in range(n - h.degree))


def _is_invariant(basis, matrices: Sequence[Matrix]) -> bool:
    ring = matrices[0].ring
    span = Matrix.from_rows(ring, basis)
    base_rank = rank(span)
    for a in matrices:
        for v in basis:
            image = a @ Matrix.from_columns(ring, [v])
            extended = span.vstack(image.transpose())
            if rank(extended) != base_rank:
                return False
    return True


def common_invariant_subspaces(
    polys: Sequence[MonicPoly], factors: Optional[Sequence[Poly]] = None
) -> InvariantSubspaceReport:
    """Find subspaces invariant under every C(f_i).

    A nontrivial one exists iff 0 < deg d < n for d = gcd(f_1, ..., f_k). For
    each factor h of d (d itself by default) the subspace spanned by
    [h], [Xh], ..., [X^(n - deg h - 1) h] is built and checked.
    """
    if not polys:
        raise DomainError("at least one polynomial is required")
    ring, n = polys[0].ring, polys[0].degree
    if not ring.is_field:
        raise DomainError(f"invariant subspaces are computed over fields, not {ring}")
    for p in polys:
        if p.degree != n:
            raise DomainError(f"degree mismatch: {n} and {p.degree}")
        if p.ring != ring:
            raise DomainError(f"ring mismatch: {ring} and {p.ring}")

    d = polys[0]
    for p in polys[1:]:
        d = poly_gcd(d, p)
    exists = 0 < d.degree < n
    if factors is None:
        factors = [d] if exists else []

    matrices = [companion(p) for p in polys]
    subspaces = []
    for h in factors:
        h = make_monic(h)
        if not 0 < h.degree < n:
            raise DomainError(f"factor {h} must have degree strictly between 0 and {n}")
        if not poly_divides(h, d):
            raise DomainError(f"factor {h} does not divide gcd {d}")
        basis = _subspace_basis(h, n)
        invariant = _is_invariant(basis, matrices)
        if not invariant:
            raise InvariantViolation(
                f"subspace attached to {h} is not invariant",
                dump={"ring": ring.spec, "polys": [str(p) for p in polys], "factor": str(h)},
            )
        subspaces.append(InvariantSubspace(factor=h, dimension=len(basis), basis=basis, invariant=invariant))
    logging.info(f"Common invariant subspaces: gcd {d}, nontrivial={exists}")
    return InvariantSubspaceReport(gcd=d, exists_nontrivial=exists, subspaces=tuple(subspaces))
