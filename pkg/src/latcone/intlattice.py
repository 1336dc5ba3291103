"""Exact integer linear algebra: matrices, Smith normal form, lattice spans.

Everything runs on arbitrary-precision Python integers; there is no floating
point and no fixed-width fast path, so arithmetic never silently overflows.
Vectors are plain tuples of ints and matrices are immutable row-major tuples.
All other modules are built on these primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]


def vec(values: Iterable[int]) -> Vector:
    return tuple(int(x) for x in values)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: int, v: Vector) -> Vector:
    return tuple(c * a for a in v)

def vec_neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def dot(u: Vector, v: Vector) -> int:
    if len(u) != len(v):
        raise ValueError("dot of vectors with different lengths")
    total = 0
    for i in range(len(u)):
        total += u[i] * v[i]
    return total


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def content(v: Vector) -> int:
    """Gcd of the entries (0 for the zero vector)."""
    g = 0
    for a in v:
        g = math.gcd(g, a)
    return g


def primitive(v: Vector) -> Vector:
    """Divide a nonzero vector by the gcd of its entries. No sign flip."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return vec(v) if g == 1 else tuple(a // g for a in v)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major. Zero rows/cols are legal."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [vec(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            raise ValueError("cols required for a matrix with no rows")
        flat: list[int] = []
        for r in rows:
            flat.extend(r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [vec(c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("ragged columns")
            if rows is not None and rows != height:
                raise ValueError("rows does not match column height")
            rows = height
        elif rows is None:
            raise ValueError("rows required for a matrix with no columns")
        flat = [cols[j][i] for i in range(rows) for j in range(len(cols))]
        return cls(rows, len(cols), tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(index)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            base = i * k
            obase = i * m
            for t in range(k):
                x = a[base + t]
                if x:
                    bbase = t * m
                    for j in range(m):
                        out[obase + j] += x * b[bbase + j]
        return IntMatrix(n, m, tuple(out))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix times column vector."""
        v = vec(v)
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.row_list()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pivot_row is None:
                    return 0
                a[k], a[pivot_row] = a[pivot_row], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        return rank_of_vectors([self.row(i) for i in range(self.rows)])

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


def rank_of_vectors(vectors: Sequence[Sequence[int]]) -> int:
    """Rank of the span of the given integer vectors (exact, fraction-free)."""
    work = [list(v) for v in vectors if any(v)]
    if not work:
        return 0
    width = len(work[0])
    rank = 0
    prev = 1
    for col in range(width):
        if rank == len(work):
            break
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        for i in range(rank + 1, len(work)):
            row = work[i]
            x = row[col]
            if x == 0:
                # still rescale for the fraction-free invariant
                for j in range(col + 1, width):
                    row[j] = (row[j] * p) // prev
            else:
                top = work[rank]
                for j in range(col + 1, width):
                    row[j] = (row[j] * p - x * top[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def solve_exact(matrix: IntMatrix, target: Sequence[int]) -> Optional[list[Fraction]]:
    """Solve M x = target over the rationals; None if inconsistent.

    Requires the columns of M to be linearly independent so that the solution,
    when it exists, is unique.
    """
    target = vec(target)
    if len(target) != matrix.rows:
        raise ValueError("dimension mismatch in solve")
    aug = [[Fraction(matrix[i, j]) for j in range(matrix.cols)] + [Fraction(target[i])]
           for i in range(matrix.rows)]
    n = matrix.cols
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((i for i in range(row, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("columns are not linearly independent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        p = aug[row][col]
        aug[row] = [a / p for a in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == len(aug):
            break
    for i in range(row, len(aug)):
        if aug[i][n] != 0:
            return None
    if row < n:
        raise ValueError("columns are not linearly independent")
    return [aug[i][n] for i in range(n)]


def rational_inverse(matrix: IntMatrix) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular square integer matrix."""
    if matrix.rows != matrix.cols:
        raise ValueError("inverse of a non-square matrix")
    n = matrix.rows
    aug = [[Fraction(matrix[i, j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def integer_inverse(matrix: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, exact and integral."""
    adjugate, det = scaled_inverse(matrix)
    if det != 1:
        raise ValueError("matrix is not unimodular")
    return adjugate  # |det| = 1, so det_d * M^{-1} is already the inverse


def scaled_inverse(matrix: IntMatrix) -> tuple[IntMatrix, int]:
    """Return (A, d) with A = d * M^{-1} integral and d = |det M| > 0.

    Built from the Smith decomposition, so all arithmetic stays integral:
    M^{-1} = V D^{-1} U and det M = +/- prod(d_i).
    """
    if matrix.rows != matrix.cols:
        raise ValueError("inverse of a non-square matrix")
    n = matrix.rows
    decomposition = snf(matrix)
    factors = decomposition.invariant_factors
    if len(factors) < n:
        raise ValueError("singular matrix")
    det_d = 1
    for d in factors:
        det_d *= d
    # M^{-1} = V D^{-1} U, so det_d * M^{-1} = V diag(det_d/d_i) U is integral
    # with det_d > 0 by SNF normalization.
    mid = IntMatrix(n, n, tuple(
        det_d // factors[i] if i == j else 0 for i in range(n) for j in range(n)))
    return decomposition.V @ mid @ decomposition.U, det_d


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ...

    U_inv and V_inv are the exact integer inverses, tracked during the
    reduction (each elementary operation is mirrored by its inverse).
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]
    U_inv: IntMatrix
    V_inv: IntMatrix


def snf(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot selection: smallest absolute nonzero entry of the remaining
    submatrix, ties broken by row-major position, so the output is
    deterministic.
    """
    R, C = M.rows, M.cols
    a = M.row_list()
    u = IntMatrix.identity(R).row_list()
    ui = IntMatrix.identity(R).row_list()
    v = IntMatrix.identity(C).row_list()
    vi = IntMatrix.identity(C).row_list()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:  # inverse: swap columns
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]  # inverse: swap rows

    def row_sub(i: int, j: int, q: int) -> None:
        # row_i -= q * row_j; inverse: col_j += q * col_i
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]
        for row in ui:
            row[j] += q * row[i]

    def col_sub(i: int, j: int, q: int) -> None:
        # col_i -= q * col_j; inverse: row_j += q * row_i
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]
        vi[j] = [x + q * y for x, y in zip(vi[j], vi[i])]

    t = 0
    while t < min(R, C):
        best: Optional[tuple[int, int]] = None
        for i in range(t, R):
            for j in range(t, C):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(best[0], t)
        if best[1] != t:
            swap_cols(best[1], t)

        while True:
            for i in range(t + 1, R):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(i, t)
            for j in range(t + 1, C):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(j, t)
            if any(a[i][t] != 0 for i in range(t + 1, R)):
                continue
            p = a[t][t]
            offender = None
            for i in range(t + 1, R):
                for j in range(t + 1, C):
                    if a[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # row_t += row_offender
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            for row in ui:
                row[t] = -row[t]
        t += 1

    D = IntMatrix.from_rows(a, cols=C)
    factors = tuple(a[i][i] for i in range(min(R, C)) if a[i][i] != 0)
    return SmithDecomposition(
        U=IntMatrix.from_rows(u, cols=R),
        D=D,
        V=IntMatrix.from_rows(v, cols=C),
        invariant_factors=factors,
        U_inv=IntMatrix.from_rows(ui, cols=R),
        V_inv=IntMatrix.from_rows(vi, cols=C),
    )


@dataclass(frozen=True)
class CokernelStructure:
    """Shape of Z^rows / im(M): free rank plus cyclic torsion factors."""

    free_rank: int
    torsion_factors: tuple[int, ...]

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion_factors


def cokernel_structure(M: IntMatrix) -> CokernelStructure:
    decomposition = snf(M)
    factors = decomposition.invariant_factors
    return CokernelStructure(
        free_rank=M.rows - len(factors),
        torsion_factors=tuple(d for d in factors if d > 1),
    )


@dataclass(frozen=True)
class SpanReport:
    """How a finite set of lattice vectors sits inside Z^ambient_rank.

    `index` is the index of the generated sublattice when the rational span is
    full, and None (infinite) otherwise.
    """

    spans_rationally: bool
    spans_lattice: bool
    index: Optional[int]


def span_report(vectors: Sequence[Sequence[int]], ambient_rank: int) -> SpanReport:
    vectors = [vec(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_rank:
            raise ValueError("vector length does not match ambient rank")
    if ambient_rank == 0:
        return SpanReport(True, True, 1)
    if not vectors:
        return SpanReport(False, False, None)
    matrix = IntMatrix.from_columns(vectors, rows=ambient_rank)
    factors = snf(matrix).invariant_factors
    full = len(factors) == ambient_rank
    if not full:
        return SpanReport(False, False, None)
    index = 1
    for d in factors:
        index *= d
    return SpanReport(True, index == 1, index)


def kernel_basis(M: IntMatrix) -> list[Vector]:
    """Basis of the saturated integer kernel of M (columns of the SNF right
    transform beyond the rank)."""
    decomposition = snf(M)
    rank = len(decomposition.invariant_factors)
    return [decomposition.V.col(j) for j in range(rank, M.cols)]


def lattice_solve(basis: IntMatrix, target: Sequence[int]) -> Optional[Vector]:
    """Integer coefficients x with basis * x = target, or None.

    `basis` columns generate the sublattice; the solution returned is one
    valid coefficient vector (unique when the columns are independent).
    """
    target = vec(target)
    if len(target) != basis.rows:
        raise ValueError("dimension mismatch in lattice solve")
    decomposition = snf(basis)
    rank = len(decomposition.invariant_factors)
    w = decomposition.U.apply(target)
    y = []
    for i in range(basis.cols):
        if i < rank:
            d = decomposition.invariant_factors[i]
            if w[i] % d != 0:
                return None
            y.append(w[i] // d)
        else:
            y.append(0)
    for i in range(rank, basis.rows):
        if w[i] != 0:
            return None
    return decomposition.V.apply(y)


def lattice_contains(basis: IntMatrix, target: Sequence[int]) -> bool:
    return lattice_solve(basis, target) is not None


def saturation_basis(vectors: Sequence[Vector], ambient_rank: int) -> list[Vector]:
    """Basis of the saturation (span cap Z^n) of the lattice the vectors span.

    Returned as columns of the first-rank block of the inverse left SNF
    transform, so the basis is a lattice basis of span(vectors) cap Z^n.
    """
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return []
    matrix = IntMatrix.from_columns(vectors, rows=ambient_rank)
    decomposition = snf(matrix)
    rank = len(decomposition.invariant_factors)
    return [decomposition.U_inv.col(i) for i in range(rank)]
