"""Exact linear algebra over the integers and rationals.

Matrices are immutable tuples of tuples of Python ints, so every value is
hashable, safe to share, and free of overflow at any magnitude.  All
algorithms here are fraction-free (Bareiss, Smith reduction) or use exact
rationals (signature, rank); nothing touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import ContractError, DimensionError, NotUnimodularError


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.entries
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows in matrix")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]]) -> "IntMatrix":
        if not cols:
            return IntMatrix(())
        n = len(cols[0])
        return IntMatrix(tuple(tuple(int(c[i]) for c in cols) for i in range(n)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    # -- shape --------------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    # -- arithmetic ---------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bt = other.transpose().entries
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(ra, cb)) for cb in bt)
                               for ra in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.entries))

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if self.cols != len(v):
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("row count mismatch in hstack")
        return IntMatrix(tuple(a + b for a, b in zip(self.entries, other.entries)))

    @staticmethod
    def block(grid: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        rows: list[tuple[int, ...]] = []
        for band in grid:
            height = band[0].rows
            if any(b.rows != height for b in band):
                raise DimensionError("inconsistent block heights")
            for i in range(height):
                row: tuple[int, ...] = ()
                for b in band:
                    row += b.entries[i] if b.entries else ()
                rows.append(row)
        return IntMatrix(tuple(rows))

    # -- predicates ---------------------------------------------------

    @property
    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch")


class SnfDecomposition(NamedTuple):
    """Invertible U, V with U @ M @ V = D, D diagonal, d1 | d2 | ... >= 0."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))


def determinant(M: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not M.is_square:
        raise DimensionError("determinant requires a square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank(M: IntMatrix) -> int:
    """Rank over the rationals (exact Gaussian elimination)."""
    a = [[Fraction(x) for x in row] for row in M.entries]
    m, n = M.rows, M.cols
    r = 0
    for j in range(n):
        pivot_row = next((i for i in range(r, m) if a[i][j] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = 1 / a[r][j]
        for i in range(r + 1, m):
            if a[i][j] != 0:
                f = a[i][j] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def radical_rank(S: IntMatrix) -> int:
    """Dimension over Q of the nullspace of a square matrix."""
    if not S.is_square:
        raise DimensionError("radical_rank requires a square matrix")
    return S.rows - rank(S)


def signature_symmetric(S: IntMatrix) -> int:
    """Signature (positive minus negative inertia) of a symmetric matrix.

    Computed by exact congruence diagonalization over the rationals; the
    radical contributes zero.
    """
    if not S.is_symmetric:
        raise ContractError("signature requires a symmetric matrix")
    n = S.rows
    a = [[Fraction(x) for x in row] for row in S.entries]

    def add_row_col(i: int, j: int, f: Fraction) -> None:
        # congruence: row_i += f*row_j, then col_i += f*col_j
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]
        for r in a:
            r[i] = r[i] + f * r[j]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]

    sig = 0
    for k in range(n):
        if a[k][k] == 0:
            l = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if l is not None:
                swap(k, l)
            else:
                off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    break  # remaining block is zero: the radical
                i, j = off
                add_row_col(i, j, Fraction(1))  # makes a[i][i] = 2*a[i][j] != 0
                if i != k:
                    swap(k, i)
        d = a[k][k]
        sig += 1 if d > 0 else -1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                add_row_col(i, k, -a[i][k] / d)
    return sig


def apply_congruence(M: IntMatrix, T: IntMatrix, require_unimodular: bool = False) -> IntMatrix:
    """T^t @ M @ T.  T may be rectangular (restriction to a sublattice)."""
    if not M.is_square or M.rows != T.rows:
        raise DimensionError("congruence shape mismatch")
    if require_unimodular:
        if not T.is_square or abs(determinant(T)) != 1:
            raise NotUnimodularError("transform is not unimodular")
    return T.transpose() @ M @ T


def smith_normal_form(M: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen by minimal absolute value; invariant factors are
    normalized nonnegative with d1 | d2 | ... .
    """
    m, n = M.rows, M.cols
    a = M.to_lists()
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, q):
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, q):
        # col_i -= q * col_j
        for r in a:
            r[i] = r[i] - q * r[j]
        for r in v:
            r[i] = r[i] - q * r[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # minimal-absolute-value pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)

        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide every remaining entry
            d = a[t][t]
            fix = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % d != 0), None)
            if fix is None:
                break
            add_row(t, fix[0], -1)  # bring the offending row into play
        t += 1

    for i in range(min(m, n)):
        if a[i][i] < 0:
            negate_row(i)

    return SnfDecomposition(IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v))


def invariant_factors(M: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(M).invariant_factors


def unimodular_inverse(M: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    snf = smith_normal_form(M)
    if any(d != 1 for d in snf.invariant_factors) or not M.is_square:
        raise NotUnimodularError("matrix is not unimodular")
    return snf.V @ snf.U  # U M V = 1  =>  M^-1 = V U


def solve_integer(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integral solution x of A x = b, or None if there is none."""
    if A.rows != len(b):
        raise DimensionError("right-hand side length mismatch")
    snf = smith_normal_form(A)
    c = snf.U.mul_vec(b)
    y = [0] * A.cols
    k = min(A.rows, A.cols)
    for i in range(A.rows):
        d = snf.D[i, i] if i < k else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            if i < A.cols:
                y[i] = c[i] // d
    return snf.V.mul_vec(y)


def kernel_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated integer kernel {x : A x = 0}."""
    snf = smith_normal_form(A)
    k = min(A.rows, A.cols)
    out = []
    for j in range(A.cols):
        if j >= k or snf.D[j, j] == 0:
            out.append(snf.V.column(j))
    return out


def is_primitive_sublattice(B: IntMatrix) -> bool:
    """True iff the columns of B span a summand of the ambient lattice."""
    if B.cols == 0:
        return True
    if B.cols > B.rows:
        return False
    factors = invariant_factors(B)
    return len(factors) == B.cols and all(d == 1 for d in factors)


def complete_basis(B: IntMatrix) -> IntMatrix:
    """Extend the columns of a primitive B to a basis of the full lattice.

    Returns a unimodular matrix whose first B.cols columns are B.
    """
    n, k = B.rows, B.cols
    if k == 0:
        return IntMatrix.identity(n)
    if not is_primitive_sublattice(B):
        raise ContractError("columns do not span a summand")
    snf = smith_normal_form(B)
    u_inv = unimodular_inverse(snf.U)
    ext = u_inv.submatrix(range(n), range(k, n))
    return B.hstack(ext)
