"""Report records produced by the companion-pair operations.

Every record renders to JSON-ready dictionaries through ``to_dict``. Ring
elements, polynomials and matrices become exact strings; counts such as the
degree, ranks and dimensions stay JSON integers.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .matrices import Matrix
from .poly import Poly, coefficient_strings, format_poly
from .rings import RingElement, format_element


def element_text(value: Optional[RingElement]) -> Optional[str]:
    return None if value is None else format_element(value)


def poly_dict(p: Optional[Poly]) -> Optional[Dict[str, Any]]:
    if p is None:
        return None
    return {"text": format_poly(p), "coeffs": coefficient_strings(p)}


def matrix_rows(m: Optional[Matrix]) -> Optional[List[List[str]]]:
    if m is None:
        return None
    return [[format_element(e) for e in m.row(i)] for i in range(m.rows)]


def vector_text(v: Sequence[RingElement]) -> List[str]:
    return [format_element(e) for e in v]


@dataclass(frozen=True)
class DetIdentityReport:
    """det M_{f,g} next to Res(f,g)^(n-1)."""
    n: int
    det_m: RingElement
    resultant: RingElement
    res_power: RingElement
    equal: bool
    via_lift: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "det_m": element_text(self.det_m),
            "resultant": element_text(self.resultant),
            "res_power": element_text(self.res_power),
            "equal": self.equal,
            "via_lift": self.via_lift,
        }


@dataclass(frozen=True)
class IndexReport:
    """Lattice index of R<C,D> in M_n(R) over Z or Z[i].

    ``predicted_index`` and ``snf_index`` are None when the lattice is
    rank-deficient (index infinite).
    """
    n: int
    resultant: RingElement
    predicted_index: Optional[int]
    snf_index: Optional[int]
    invariant_factors: Tuple[RingElement, ...]
    agree: bool
    rank: int
    rank_deficient: bool = False
    basis_rank: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "resultant": element_text(self.resultant),
            "predicted_index": "infinite" if self.predicted_index is None else str(self.predicted_index),
            "snf_index": "infinite" if self.snf_index is None else str(self.snf_index),
            "invariant_factors": vector_text(self.invariant_factors),
            "agree": self.agree,
            "rank": self.rank,
            "rank_deficient": self.rank_deficient,
            "basis_rank": self.basis_rank,
        }


@dataclass(frozen=True)
class Obstruction:
    """A prime modulo which the inputs keep a common factor."""
    prime: int
    common_factor: Poly

    def to_dict(self) -> Dict[str, Any]:
        return {"prime": str(self.prime), "common_factor": poly_dict(self.common_factor)}


@dataclass(frozen=True)
class GenerationVerdict:
    """Whether the companion matrices generate the full matrix algebra.

    ``method`` names the criterion used: ``gcd`` (fields), ``maximal-ideals``
    (Z/m), ``resultant-unit`` (two inputs over Z or Z[i]), ``candidate-primes``
    or ``hnf-constant`` (three or more inputs over Z).
    """
    generates: bool
    method: str
    gcd: Optional[Poly] = None
    resultant: Optional[RingElement] = None
    obstructions: Tuple[Obstruction, ...] = ()
    constant_generator: Optional[RingElement] = None
    common_factor: Optional[Poly] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generates": self.generates,
            "method": self.method,
            "gcd": poly_dict(self.gcd),
            "resultant": element_text(self.resultant),
            "obstructions": [o.to_dict() for o in self.obstructions],
            "constant_generator": element_text(self.constant_generator),
            "common_factor": poly_dict(self.common_factor),
        }


@dataclass(frozen=True)
class SpanClosureReport:
    """Unital algebra generated by a set of matrices.

    ``closed`` tells whether the span of the ordered products A^i B^j is
    already the generated algebra (two generators only);
    ``reversed_closed`` does the same for B^j A^i.
    """
    size: int
    dimension: int
    basis: Matrix
    products_dimension: Optional[int] = None
    closed: Optional[bool] = None
    reversed_closed: Optional[bool] = None
    lattice_index: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "dimension": self.dimension,
            "basis": matrix_rows(self.basis),
            "products_dimension": self.products_dimension,
            "closed": self.closed,
            "reversed_closed": self.reversed_closed,
            "lattice_index": None if self.lattice_index is None else str(self.lattice_index),
        }


@dataclass(frozen=True)
class CommutantReport:
    """Matrices commuting with both companion matrices."""
    dimension: int
    expected: int
    basis: Tuple[Matrix, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "expected": self.expected,
            "basis": [matrix_rows(m) for m in self.basis],
        }


@dataclass(frozen=True)
class InvariantSubspace:
    """Span of [h], [Xh], ..., [X^(k-1) h] for a factor h of the common gcd."""
    factor: Poly
    dimension: int
    basis: Tuple[Tuple[RingElement, ...], ...]
    invariant: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "factor": poly_dict(self.factor),
            "dimension": self.dimension,
            "basis": [vector_text(v) for v in self.basis],
            "invariant": self.invariant,
        }


@dataclass(frozen=True)
class InvariantSubspaceReport:
    gcd: Poly
    exists_nontrivial: bool
    subspaces: Tuple[InvariantSubspace, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gcd": poly_dict(self.gcd),
            "exists_nontrivial": self.exists_nontrivial,
            "subspaces": [s.to_dict() for s in self.subspaces],
        }


@dataclass(frozen=True)
class PSequence:
    """p_0..p_{n-1} and the bivariate P_0..P_{n-1}."""
    p: Tuple[Poly, ...]
    P: Tuple[Any, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": [poly_dict(x) for x in self.p],
            "P": [{"text": x.format(), "terms": x.to_table()} for x in self.P],
        }


@dataclass(frozen=True)
class RelationsReport:
    """a_j scalars, p_j / P_j sequences and the identities they satisfy."""
    a: Tuple[RingElement, ...]
    sequence: PSequence
    checks: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {"a": vector_text(self.a)}
        data.update(self.sequence.to_dict())
        data["checks"] = dict(self.checks)
        return data


@dataclass(frozen=True)
class SolveQReport:
    """Solutions Q of g(C) Q = -f(D): particular P plus the kernel of g(C)."""
    particular: Matrix
    kernel: Tuple[Tuple[RingElement, ...], ...]
    unique: bool
    kernel_full: bool
    samples_checked: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "particular": matrix_rows(self.particular),
            "kernel": [vector_text(v) for v in self.kernel],
            "kernel_dimension": len(self.kernel),
            "unique": self.unique,
            "kernel_full": self.kernel_full,
            "samples_checked": self.samples_checked,
        }


@dataclass(frozen=True)
class BasisReport:
    """Rank and monomial basis of R<C,D> when gcd(f, g) has degree m."""
    m: int
    rank: int
    basis_monomials: Tuple[Tuple[int, int], ...]
    h: Poly
    gcd: Poly
    closure_dimension: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "rank": self.rank,
            "basis_monomials": [list(mono) for mono in self.basis_monomials],
            "h": poly_dict(self.h),
            "gcd": poly_dict(self.gcd),
            "closure_dimension": self.closure_dimension,
        }


@dataclass(frozen=True)
class HAnnihilatorReport:
    h: Poly
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"h": poly_dict(self.h), "holds": self.holds}


@dataclass(frozen=True)
class PresentationCheckReport:
    """Outcome of the randomized presentation verification."""
    variant: str
    relations_checked: int
    words_checked: int
    splits_checked: int
    basis_size: int
    basis_rank: int
    expected_dimension: int
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "relations_checked": self.relations_checked,
            "words_checked": self.words_checked,
            "splits_checked": self.splits_checked,
            "basis_size": self.basis_size,
            "basis_rank": self.basis_rank,
            "expected_dimension": self.expected_dimension,
            "passed": self.passed,
        }


@dataclass
class Report:
    """Envelope printed by the command line: echo of the request plus results."""
    subcommand: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    result: Dict[str, Any] = field(default_factory=dict)
    verdicts: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "result": self.result,
            "verdicts": self.verdicts,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        """Create from dictionary."""
        return cls(
            subcommand=data.get("subcommand", ""),
            inputs=dict(data.get("inputs", {})),
            result=dict(data.get("result", {})),
            verdicts=dict(data.get("verdicts", {})),
        )
