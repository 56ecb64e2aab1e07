"""Dense exact matrices and the normal forms built on them.

Entries are stored row-major. The basic-matrix coordinate order used by the
structure matrix (first by column, then by row) is produced explicitly by
``vectorize_column_major`` rather than by the storage layout.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, RingMismatchError
from .rings import (
    INTEGERS,
    RingDescriptor,
    RingElement,
    divide_exact,
    euclidean_divmod,
    euclidean_size,
    inverse,
    reduce_hom,
    reduction_quotient,
    unit_normal,
)

Vector = Tuple[RingElement, ...]


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable dense matrix over a single ring.

    A matrix may have zero rows; this is how an empty lattice basis is
    represented.
    """
    ring: RingDescriptor
    rows: int
    cols: int
    entries: Tuple[RingElement, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DomainError(f"invalid matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(self.ring.element(e) for e in self.entries))

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        """Build from a list of rows; ``cols`` is required only when rows is empty."""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and width != cols:
            raise DomainError(f"expected {cols} columns, got {width}")
        for r in rows:
            if len(r) != width:
                raise DomainError("ragged rows: all rows must have the same length")
        return cls(ring, len(rows), width, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, ring: RingDescriptor, columns: Sequence[Sequence[Any]]) -> "Matrix":
        return cls.from_rows(ring, columns).transpose()

    @classmethod
    def zeros(cls, ring: RingDescriptor, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, (ring.zero(),) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def scalar(cls, ring: RingDescriptor, n: int, value: Any) -> "Matrix":
        return cls.identity(ring, n) * ring.element(value)

    @classmethod
    def basic(cls, ring: RingDescriptor, n: int, k: int, l: int) -> "Matrix":
        """Basic matrix E^{kl}: 1 at (k, l), zero elsewhere (0-based indices)."""
        entries = [ring.zero()] * (n * n)
        entries[k * n + l] = ring.one()
        return cls(ring, n, n, tuple(entries))

    # -- access ---------------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]) -> RingElement:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> List[List[RingElement]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_scalar(self) -> bool:
        """True for c*I (square only)."""
        if not self.is_square:
            return False
        if self.rows == 0:
            return True
        diagonal = self[0, 0]
        return all(
            self[i, j] == (diagonal if i == j else self.ring.zero())
            for i in range(self.rows)
            for j in range(self.cols)
        )

    # -- arithmetic -----------------------------------------------------------

    def _check_same(self, other: "Matrix", op: str) -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot {op} matrices over {self.ring} and {other.ring}")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError(
                f"cannot {op} {self.rows}x{self.cols} and {other.rows}x{other.cols} matrices"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other, "add")
        return Matrix(self.ring, self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other, "subtract")
        return Matrix(self.ring, self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar: Union[RingElement, int]) -> "Matrix":
        if isinstance(scalar, Matrix):
            return self @ scalar
        if not isinstance(scalar, (RingElement, int)):
            return NotImplemented
        c = self.ring.element(scalar)
        return Matrix(self.ring, self.rows, self.cols, tuple(c * a for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot multiply matrices over {self.ring} and {other.ring}")
        if self.cols != other.rows:
            raise DomainError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = self.ring.zero()
        other_cols = [other.column(j) for j in range(other.cols)]
        entries = []
        for i in range(self.rows):
            row = self.row(i)
            for col in other_cols:
                total = zero
                for a, b in zip(row, col):
                    if not a.is_zero() and not b.is_zero():
                        total = total + a * b
                entries.append(total)
        return Matrix(self.ring, self.rows, other.cols, tuple(entries))

    def power(self, k: int) -> "Matrix":
        """A^k by iterated multiplication (k >= 0)."""
        if not self.is_square:
            raise DomainError("only square matrices have powers")
        if k < 0:
            raise DomainError("negative matrix powers are not supported")
        result = Matrix.identity(self.ring, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ring,
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def map(self, fn: Callable[[RingElement], RingElement], ring: RingDescriptor) -> "Matrix":
        """Apply fn entrywise, producing a matrix over ``ring``."""
        return Matrix(ring, self.rows, self.cols, tuple(fn(a) for a in self.entries))

    def reduce_to(self, target: RingDescriptor) -> "Matrix":
        """Entrywise image under the canonical homomorphism into target."""
        return self.map(lambda a: reduce_hom(a, target), target)

    def vstack(self, other: "Matrix") -> "Matrix":
        if other.ring != self.ring or other.cols != self.cols:
            raise DomainError("vstack needs matching ring and column count")
        return Matrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"Matrix({self.ring.spec}, {self.rows}x{self.cols}, {[[str(e) for e in r] for r in self.row_list()]})"


def format_matrix(a: Matrix) -> str:
    """Right-aligned text rendering, one row per line."""
    if a.rows == 0 or a.cols == 0:
        return "[]"
    cells = [[str(e) for e in a.row(i)] for i in range(a.rows)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def vectorize_column_major(a: Matrix) -> Vector:
    """Coordinates in the basic-matrix basis ordered first by column then by row."""
    return tuple(a[i, j] for j in range(a.cols) for i in range(a.rows))


# =============================================================================
# Determinants and elimination over fields
# =============================================================================

def det_fraction_free(a: Matrix) -> RingElement:
    """Exact determinant by Bareiss fraction-free elimination.

    Every intermediate division is exact, so this runs unchanged over Z, Z[i]
    and the fields. Composite Z/m is rejected because it has zero divisors.
    """
    if not a.is_square:
        raise DomainError(f"determinant of a non-square {a.rows}x{a.cols} matrix")
    if not a.ring.is_domain:
        raise DomainError(f"fraction-free determinant needs an integral domain, not {a.ring}")
    n = a.rows
    ring = a.ring
    if n == 0:
        return ring.one()
    work = a.row_list()
    negate = False
    previous = ring.one()
    for k in range(n - 1):
        if work[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not work[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            work[k], work[swap] = work[swap], work[k]
            negate = not negate
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = divide_exact(work[i][j] * pivot - work[i][k] * work[k][j], previous)
            work[i][k] = ring.zero()
        previous = pivot
    det = work[n - 1][n - 1]
    return -det if negate else det


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    if not a.ring.is_field:
        raise DomainError(f"row reduction with division needs a field, not {a.ring}")
    work = a.row_list()
    pivots: List[int] = []
    r = 0
    for col in range(a.cols):
        if r == a.rows:
            break
        pivot_row = next((i for i in range(r, a.rows) if not work[i][col].is_zero()), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = inverse(work[r][col])
        work[r] = [inv * x for x in work[r]]
        for i in range(a.rows):
            if i != r and not work[i][col].is_zero():
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    return Matrix.from_rows(a.ring, work, cols=a.cols), pivots


def solve_kernel(a: Matrix) -> List[Vector]:
    """Basis of {x : A x = 0} over a field; empty iff A is injective."""
    if not a.ring.is_field:
        raise DomainError(f"kernel computation needs a field, not {a.ring}")
    reduced, pivots = rref(a)
    ring = a.ring
    free = [j for j in range(a.cols) if j not in pivots]
    basis: List[Vector] = []
    for f in free:
        x = [ring.zero()] * a.cols
        x[f] = ring.one()
        for r, p in enumerate(pivots):
            x[p] = -reduced[r, f]
        basis.append(tuple(x))
    return basis


def rank(a: Matrix) -> int:
    """Rank over a field, or rank of the row lattice over Z / Z[i]."""
    if a.ring.is_field:
        return len(rref(a)[1])
    return hermite_row_basis(a).rank


def solve_linear(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """One solution X of A X = B over a field (free variables set to 0), or None."""
    if not a.ring.is_field:
        raise DomainError(f"solving linear systems needs a field, not {a.ring}")
    if a.rows != b.rows:
        raise DomainError("A and B must have the same number of rows")
    augmented = Matrix.from_rows(
        a.ring, [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)], cols=a.cols + b.cols
    )
    reduced, pivots = rref(augmented)
    if any(p >= a.cols for p in pivots):
        return None
    solution = [[a.ring.zero()] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for j in range(b.cols):
            solution[p][j] = reduced[r, a.cols + j]
    return Matrix.from_rows(a.ring, solution, cols=b.cols)


# =============================================================================
# Hermite and Smith normal forms
# =============================================================================

@dataclass(frozen=True)
class HermiteBasis:
    """Row Hermite normal form of a lattice: triangular basis plus pivots."""
    basis: Matrix
    rank: int
    pivot_columns: Tuple[int, ...] = field(default_factory=tuple)


def _axpy(target: List[RingElement], q: RingElement, source: Sequence[RingElement]) -> List[RingElement]:
    return [t - q * s for t, s in zip(target, source)]


def hermite_row_basis(
    rows: Union[Matrix, Sequence[Sequence[Any]]], ring: RingDescriptor = INTEGERS
) -> HermiteBasis:
    """Canonical row HNF of the lattice spanned by ``rows``.

    Works over any Euclidean ring (Z, Z[i], fields). Pivots are normalized to
    their canonical associate and entries above each pivot are reduced modulo it.
    """
    if isinstance(rows, Matrix):
        ring, width = rows.ring, rows.cols
        work = [r for r in rows.row_list() if any(not e.is_zero() for e in r)]
    else:
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise DomainError("ragged input: all vectors must have the same length")
        width = lengths.pop() if lengths else 0
        work = [[ring.element(e) for e in r] for r in rows]
        work = [r for r in work if any(not e.is_zero() for e in r)]
    if not ring.is_euclidean:
        raise DomainError(f"Hermite normal form needs a Euclidean ring, not {ring}")

    pivots: List[int] = []
    r = 0
    for col in range(width):
        if r == len(work):
            break
        found = False
        while True:
            candidates = [i for i in range(r, len(work)) if not work[i][col].is_zero()]
            if not candidates:
                break
            found = True
            best = min(candidates, key=lambda i: (euclidean_size(work[i][col]), i))
            work[r], work[best] = work[best], work[r]
            for i in range(r + 1, len(work)):
                if not work[i][col].is_zero():
                    q = euclidean_divmod(work[i][col], work[r][col])[0]
                    work[i] = _axpy(work[i], q, work[r])
            if all(work[i][col].is_zero() for i in range(r + 1, len(work))):
                break
        if not found:
            continue
        _, unit = unit_normal(work[r][col])
        work[r] = [unit * x for x in work[r]]
        for i in range(r):
            q = reduction_quotient(work[i][col], work[r][col])
            if not q.is_zero():
                work[i] = _axpy(work[i], q, work[r])
        pivots.append(col)
        r += 1
    basis = Matrix.from_rows(ring, work[:r], cols=width)
    return HermiteBasis(basis=basis, rank=r, pivot_columns=tuple(pivots))


def lattice_contains(hnf: HermiteBasis, vector: Sequence[Any]) -> bool:
    """Membership test of a vector in the lattice spanned by an HNF basis."""
    ring = hnf.basis.ring
    v = [ring.element(e) for e in vector]
    if len(v) != hnf.basis.cols:
        raise DomainError(f"vector of length {len(v)} against lattice in dimension {hnf.basis.cols}")
    for k, col in enumerate(hnf.pivot_columns):
        if v[col].is_zero():
            continue
        q, rem = euclidean_divmod(v[col], hnf.basis[k, col])
        if not rem.is_zero():
            return False
        v = _axpy(v, q, hnf.basis.row(k))
    return all(e.is_zero() for e in v)


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = S with U, V unimodular and S diagonal with a_1 | a_2 | ..."""
    U: Matrix
    S: Matrix
    V: Matrix
    invariant_factors: Tuple[RingElement, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(a: Matrix) -> SmithDecomposition:
    """Smith normal form over Z or Z[i].

    Pivot rule: smallest-norm nonzero entry of the active block, ties broken by
    lowest (row, col). The output is deterministic for a given input.
    """
    ring = a.ring
    if not ring.has_norm:
        raise DomainError(f"Smith normal form is only supported over Z and Z[i], not {ring}")
    m, n = a.rows, a.cols
    s = a.row_list()
    u = Matrix.identity(ring, m).row_list()
    v = Matrix.identity(ring, n).row_list()

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for mat in (s, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(target: int, q: RingElement, source: int) -> None:
        # row_target -= q * row_source
        s[target] = _axpy(s[target], q, s[source])
        u[target] = _axpy(u[target], q, u[source])

    def add_col(target: int, q: RingElement, source: int) -> None:
        for mat in (s, v):
            for row in mat:
                row[target] = row[target] - q * row[source]

    t = 0
    while t < min(m, n):
        while True:
            candidates = [
                (euclidean_size(s[i][j]), i, j)
                for i in range(t, m)
                for j in range(t, n)
                if not s[i][j].is_zero()
            ]
            if not candidates:
                break
            _, pi, pj = min(candidates)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            pivot = s[t][t]
            for i in range(t + 1, m):
                if not s[i][t].is_zero():
                    add_row(i, euclidean_divmod(s[i][t], pivot)[0], t)
            for j in range(t + 1, n):
                if not s[t][j].is_zero():
                    add_col(j, euclidean_divmod(s[t][j], pivot)[0], t)
            if any(not s[i][t].is_zero() for i in range(t + 1, m)) or any(
                not s[t][j].is_zero() for j in range(t + 1, n)
            ):
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if not euclidean_divmod(s[i][j], pivot)[1].is_zero()
                ),
                None,
            )
            if offender is None:
                break
            logging.debug(f"SNF: pivot {pivot} at step {t} does not divide row {offender}; merging rows")
            add_row(t, -ring.one(), offender)
        if not candidates:
            break
        _, unit = unit_normal(s[t][t])
        s[t] = [unit * x for x in s[t]]
        u[t] = [unit * x for x in u[t]]
        t += 1

    factors = tuple(s[i][i] for i in range(t))
    return SmithDecomposition(
        U=Matrix.from_rows(ring, u, cols=m),
        S=Matrix.from_rows(ring, s, cols=n),
        V=Matrix.from_rows(ring, v, cols=n),
        invariant_factors=factors,
    )
