"""Core computations on a pair of companion matrices.

- CompanionPair / companion / coords: construction and coordinates
- structure: M_{f,g}, the determinant identity, the lattice index
- generation: generation verdicts, span-closure oracle, commutant
- relations: a_j, p_j, P_j, Q solutions, rank/basis and coordinate identities
- subspaces: common invariant subspaces
"""

from .bivariate import BivariatePoly
from .generation import commutant, generates_full, span_closure_oracle
from .pair import CompanionPair, companion, coords
from .relations import (
    a_sequence,
    coord_identity_checks,
    h_annihilator_check,
    p_sequence,
    rank_and_basis,
    relation_checks,
    relations_report,
    scalar_lemma_check,
    solve_q,
)
from .structure import build_structure_matrix, det_identity_check, lattice_index
from .subspaces import common_invariant_subspaces

__all__ = [
    "BivariatePoly",
    "CompanionPair",
    "a_sequence",
    "build_structure_matrix",
    "commutant",
    "common_invariant_subspaces",
    "companion",
    "coord_identity_checks",
    "coords",
    "det_identity_check",
    "generates_full",
    "h_annihilator_check",
    "lattice_index",
    "p_sequence",
    "rank_and_basis",
    "relation_checks",
    "relations_report",
    "scalar_lemma_check",
    "solve_q",
    "span_closure_oracle",
]
