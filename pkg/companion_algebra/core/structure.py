"""Structure matrix M_{f,g}, the determinant identity and the lattice index.

Columns of M_{f,g} are the coordinates of C^i D^j in the basic-matrix basis,
ordered D^{n-1}, C D^{n-1}, ..., C^{n-1} D^{n-1}, D^{n-2}, ..., I, C, ..., C^{n-1}.
Rows follow E^{11}, E^{21}, ..., E^{n1}, ..., E^{nn}.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from ..errors import DomainError, InvariantViolation
from ..matrices import Matrix, det_fraction_free, smith_normal_form, vectorize_column_major
from ..models import DetIdentityReport, IndexReport
from ..poly import lift_monic, poly_gcd, resultant
from ..rings import RingKind, norm, reduce_hom
from .pair import CompanionPair


def structure_column_order(n: int) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs (i, j) in column order: j from n-1 down to 0, i ascending."""
    return tuple((i, j) for j in range(n - 1, -1, -1) for i in range(n))


def structure_row_order(n: int) -> Tuple[Tuple[int, int], ...]:
    """Basic matrices E^{kl} (0-based) ordered first by column l, then by row k."""
    return tuple((k, l) for l in range(n) for k in range(n))


@dataclass(frozen=True)
class StructureMatrix:
    M: Matrix
    column_order: Tuple[Tuple[int, int], ...]
    row_order: Tuple[Tuple[int, int], ...]


def build_structure_matrix(pair: CompanionPair) -> StructureMatrix:
    order = structure_column_order(pair.n)
    columns = [vectorize_column_major(pair.monomial(i, j)) for i, j in order]
    return StructureMatrix(
        M=Matrix.from_columns(pair.ring, columns),
        column_order=order,
        row_order=structure_row_order(pair.n),
    )


def det_identity_check(pair: CompanionPair) -> DetIdentityReport:
    """Compare det M_{f,g} with Res(f,g)^(n-1).

    Over composite Z/m both sides are computed over Z from the lifted
    coefficients and then reduced mod m.
    """
    ring = pair.ring
    via_lift = not ring.is_domain
    if via_lift:
        lifted = CompanionPair.build(lift_monic(pair.f), lift_monic(pair.g))
        det_m = reduce_hom(det_fraction_free(build_structure_matrix(lifted).M), ring)
        res = reduce_hom(resultant(lifted.f, lifted.g), ring)
    else:
        det_m = det_fraction_free(build_structure_matrix(pair).M)
        res = resultant(pair.f, pair.g)
    res_power = res ** (pair.n - 1)
    equal = det_m == res_power
    if not equal:
        logging.error(f"det M = {det_m} but Res^(n-1) = {res_power} for f={pair.f}, g={pair.g}")
        raise InvariantViolation(
            "det M_{f,g} differs from Res(f,g)^(n-1)",
            dump={
                "ring": ring.spec,
                "f": str(pair.f),
                "g": str(pair.g),
                "det_m": str(det_m),
                "res_power": str(res_power),
            },
        )
    logging.debug(f"det identity holds over {ring}: {det_m} for f={pair.f}, g={pair.g}")
    return DetIdentityReport(
        n=pair.n, det_m=det_m, resultant=res, res_power=res_power, equal=equal, via_lift=via_lift
    )


def expected_basis_rank(pair: CompanionPair) -> int:
    """n + (n - m)(n - 1) with m = deg gcd(f, g)."""
    m = poly_gcd(pair.f, pair.g).degree
    return pair.n + (pair.n - m) * (pair.n - 1)


def lattice_index(pair: CompanionPair) -> IndexReport:
    """Index of the lattice spanned by the C^i D^j in M_n(R), R = Z or Z[i].

    The predicted value N(Res)^(n-1) is checked against the product of norms
    of the invariant factors of M_{f,g}.
    """
    ring = pair.ring
    if not ring.has_norm:
        raise DomainError(f"lattice index is only defined over Z and Z[i], not {ring}")
    n = pair.n
    res = resultant(pair.f, pair.g)
    snf = smith_normal_form(build_structure_matrix(pair).M)
    dump = {"ring": ring.spec, "f": str(pair.f), "g": str(pair.g), "resultant": str(res)}

    if res.is_zero():
        basis_rank = expected_basis_rank(pair) if ring.kind is RingKind.INTEGERS else None
        if snf.rank >= n * n or (basis_rank is not None and snf.rank != basis_rank):
            logging.error(f"Rank-deficient lattice has SNF rank {snf.rank}, expected {basis_rank}")
            raise InvariantViolation(
                "SNF rank of M_{f,g} contradicts the expected rank n + (n-m)(n-1)",
                dump={**dump, "snf_rank": snf.rank, "basis_rank": basis_rank},
            )
        return IndexReport(
            n=n,
            resultant=res,
            predicted_index=None,
            snf_index=None,
            invariant_factors=snf.invariant_factors,
            agree=True,
            rank=snf.rank,
            rank_deficient=True,
            basis_rank=basis_rank,
        )

    predicted = norm(res) ** (n - 1)
    if snf.rank != n * n:
        raise InvariantViolation(
            "M_{f,g} is singular although Res(f,g) is nonzero",
            dump={**dump, "snf_rank": snf.rank},
        )
    snf_index = 1
    for factor in snf.invariant_factors:
        snf_index *= norm(factor)
    agree = snf_index == predicted
    if not agree:
        logging.error(f"Index mismatch: predicted {predicted}, SNF {snf_index}")
        raise InvariantViolation(
            "SNF index differs from N(Res)^(n-1)",
            dump={**dump, "predicted": predicted, "snf_index": snf_index,
                  "invariant_factors": [str(x) for x in snf.invariant_factors]},
        )
    logging.info(f"Lattice index {predicted} over {ring} for f={pair.f}, g={pair.g}")
    return IndexReport(
        n=n,
        resultant=res,
        predicted_index=predicted,
        snf_index=snf_index,
        invariant_factors=snf.invariant_factors,
        agree=agree,
        rank=snf.rank,
    )
