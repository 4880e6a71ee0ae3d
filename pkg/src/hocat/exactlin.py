"""Exact dense linear algebra over Q and Z.

Matrices are immutable values.  Rational matrices hold
:class:`fractions.Fraction` entries (integral entries are kept as plain
ints, which compare and hash equal), integer matrices hold Python ints, so
nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "Rational",
    "Matrix",
    "RatMatrix",
    "IntMatrix",
    "SmithDecomposition",
    "rref",
    "rank",
    "nullspace_basis",
    "column_space_basis",
    "solve_linear",
    "inverse",
    "smith_normal_form",
    "int_kernel_basis",
    "solve_int_linear",
    "int_inverse",
    "determinant",
]

Rational = Fraction


class Matrix:
    """Dense row-major matrix with value semantics.

    Subclasses fix the scalar ring; arithmetic between a RatMatrix and an
    IntMatrix promotes to RatMatrix.
    """

    __slots__ = ("rows", "cols", "data", "_hash")
    _coerce = staticmethod(lambda x: x)

    def __init__(self, rows: int, cols: int, data: Iterable = ()):
        coerce = self._coerce
        flat = tuple(tuple(coerce(x) for x in row) for row in data)
        if not flat and rows and cols == 0:
            flat = ((),) * rows
        if len(flat) != rows or any(len(r) != cols for r in flat):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = flat
        self._hash = None

    @classmethod
    def _trusted(cls, rows: int, cols: int, data):
        """Build from entries already in the ring's normal form (no checks)."""
        m = object.__new__(cls)
        m.rows, m.cols, m._hash = rows, cols, None
        m.data = tuple(map(tuple, data)) if data or not rows else ((),) * rows
        return m

    def _arith(self, cls, rows, cols, data):
        # integer arithmetic stays normalized; rational results are renormalized
        if cls is RatMatrix:
            return cls(rows, cols, data)
        return cls._trusted(rows, cols, data)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls._trusted(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int):
        return cls._trusted(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence, rows: Optional[int] = None, cols: Optional[int] = None):
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls(rows, cols, out)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int):
        cols = len(columns)
        return cls(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    # -- basic protocol -----------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def column(self, j: int):
        return [r[j] for r in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        name = type(self).__name__
        return f"{name}({self.rows}x{self.cols}, {[list(map(str, r)) for r in self.data]})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # -- arithmetic ---------------------------------------------------------
    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return type(self)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cls = self._result_type(other)
        n = other.cols
        odata = other.data
        out = []
        # row-by-row accumulation skipping zeros: most matrices here are sparse
        for r in self.data:
            acc = [0] * n
            for a, orow in zip(r, odata):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return self._arith(cls, self.rows, n, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        cls = self._result_type(other)
        return self._arith(cls, self.rows, self.cols,
                           [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {self.shape} and {other.shape}")
        cls = self._result_type(other)
        return self._arith(cls, self.rows, self.cols,
                           [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return type(self)._trusted(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c):
        cls = RatMatrix if isinstance(c, Fraction) and c.denominator != 1 else type(self)
        return cls(self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def transpose(self):
        return type(self)._trusted(self.cols, self.rows, list(zip(*self.data)) if self.rows else [()] * self.cols)

    T = property(transpose)

    def hstack(self, *others):
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise ValueError("hstack row mismatch")
        cls = RatMatrix if any(isinstance(m, RatMatrix) for m in mats) else type(self)
        cols = sum(m.cols for m in mats)
        return cls(self.rows, cols, [sum((list(m.data[i]) for m in mats), []) for i in range(self.rows)])

    def vstack(self, *others):
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise ValueError("vstack column mismatch")
        cls = RatMatrix if any(isinstance(m, RatMatrix) for m in mats) else type(self)
        rows = [list(r) for m in mats for r in m.data]
        return cls(len(rows), self.cols, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)._trusted(len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def select_rows(self, rows: Sequence[int]):
        return self.submatrix(rows, range(self.cols))

    def select_cols(self, cols: Sequence[int]):
        return self.submatrix(range(self.rows), cols)

    def kron(self, other):
        cls = self._result_type(other)
        rows, cols = self.rows * other.rows, self.cols * other.cols
        out = [[self.data[i // other.rows][j // other.cols] * other.data[i % other.rows][j % other.cols]
                for j in range(cols)] for i in range(rows)]
        return cls(rows, cols, out)

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"], cls=None):
        if cls is None:
            cls = RatMatrix if any(isinstance(b, RatMatrix) for b in blocks) else IntMatrix
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b.data[i]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, out)


def _as_rat(x):
    """Exact rational, stored as ``int`` when integral (much faster)."""
    t = type(x)
    if t is int:
        return x
    if t is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class RatMatrix(Matrix):
    __slots__ = ()
    _coerce = staticmethod(_as_rat)


def _as_int(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        return x.numerator
    return int(x)


class IntMatrix(Matrix):
    __slots__ = ()
    _coerce = staticmethod(_as_int)

    def to_rat(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, self.data)


def _to_rat(m: Matrix) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m.rows, m.cols, m.data)


# ---------------------------------------------------------------------------
# Rational algorithms
# ---------------------------------------------------------------------------

def _rref_rows(rows: list, ncols: int):
    """In-place RREF on a list of rational lists; returns pivot columns.

    Pivots are sought among the first ``ncols`` columns only; any further
    (augmented) columns are carried along.

    Columns left of ``c`` are already reduced in the pivot row, so only its
    support from ``c`` on takes part in the elimination."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        piv = pr[c]
        if piv != 1:
            inv = Fraction(1, piv) if type(piv) is int else 1 / piv
            pr[:] = [_as_rat(x * inv) if x else 0 for x in pr]
        support = [j for j in range(c, len(pr)) if pr[j]]
        for i in range(nrows):
            if i != r:
                ri = rows[i]
                f = ri[c]
                if f:
                    for j in support:
                        ri[j] = _as_rat(ri[j] - f * pr[j])
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(rows, m.cols)
    return RatMatrix(m.rows, m.cols, rows), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace_basis(m: Matrix) -> RatMatrix:
    """Columns form a basis of {x : m x = 0}."""
    red, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red.data[i][f]
        cols.append(v)
    return RatMatrix.from_columns(cols, m.cols)


def column_space_basis(m: Matrix) -> RatMatrix:
    """Canonical basis of the column space: nonzero rows of rref(m^T), transposed."""
    red, pivots = rref(m.transpose())
    return RatMatrix.from_columns([red.data[i] for i in range(len(pivots))], m.rows)


def solve_linear(a: Matrix, b: Matrix) -> Optional[RatMatrix]:
    """Some x with a x = b, or None if the system is inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.cols
    # RatMatrix/IntMatrix entries are already normalized
    rows = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    pivots = _rref_rows(rows, n)
    r = len(pivots)
    for i in range(r, a.rows):
        if any(rows[i][n:]):
            return None
    x = [[Fraction(0)] * b.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        x[p] = rows[i][n:]
    return RatMatrix(n, b.cols, x)


def inverse(m: Matrix) -> Optional[RatMatrix]:
    if m.rows != m.cols:
        return None
    x = solve_linear(m, RatMatrix.identity(m.rows))
    if x is None or rank(m) != m.rows:
        return None
    return x


def determinant(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    rows = [[Fraction(x) for x in r] for r in m.data]
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# Integer algorithms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D, U and V unimodular, D diagonal with a divisibility chain."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: Optional[IntMatrix] = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(a: Matrix, chain: bool = True, track_inverse: bool = False) -> SmithDecomposition:
    """Smith normal form by elementary operations, pivoting on the entry of
    least absolute value.

    With ``chain=False`` the divisibility repair is skipped: ``D`` is then
    only diagonal (nonzero entries first), which is all that kernels and
    linear solving need.  ``track_inverse`` also records ``U^{-1}``."""
    m, n = a.rows, a.cols
    A = [[_as_int(x) for x in r] for r in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(m)] for i in range(m)] if track_inverse else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if W is not None:
            for r in W:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
            if W is not None:
                for r in W:
                    r[src] -= q * r[dst]

    def add_col(src, dst, q):
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder of row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            if not chain:
                break
            # divisibility: pivot must divide the rest of the lower block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            if W is not None:
                for r in W:
                    r[t] = -r[t]
        t += 1
    return SmithDecomposition(IntMatrix._trusted(m, m, U), IntMatrix._trusted(m, n, A), IntMatrix._trusted(n, n, V),
                              None if W is None else IntMatrix._trusted(m, m, W))


def int_inverse(m: Matrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(m)
    if inv is None:
        raise ValueError("matrix is singular")
    return IntMatrix(inv.rows, inv.cols, inv.data)


def int_kernel_basis(a: Matrix) -> IntMatrix:
    """Columns form a Z-basis of the lattice {x in Z^n : a x = 0}."""
    snf = smith_normal_form(a, chain=False)
    r = snf.rank
    return snf.V.select_cols(range(r, a.cols))


def solve_int_linear(a: Matrix, b: Matrix, moduli: Sequence[int]) -> Optional[IntMatrix]:
    """Integer x with a x == b modulo the row moduli (0 = exact), or None."""
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    if len(moduli) != a.rows:
        raise ValueError("one modulus per row is required")
    slack = [i for i, q in enumerate(moduli) if q]
    cols = [[_as_int(x) for x in r] for r in a.data]
    for row in range(a.rows):
        cols[row] = cols[row] + [moduli[row] if i == row else 0 for i in slack]
    aug = IntMatrix._trusted(a.rows, a.cols + len(slack), cols)
    snf = smith_normal_form(aug, chain=False)
    ub = snf.U @ IntMatrix(b.rows, b.cols, b.data)
    diag = snf.diagonal
    z = [[0] * b.cols for _ in range(aug.cols)]
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        for k in range(b.cols):
            v = ub.data[i][k]
            if d == 0:
                if v:
                    return None
            else:
                if v % d:
                    return None
                z[i][k] = v // d
    x = snf.V @ IntMatrix._trusted(aug.cols, b.cols, z)
    return x.select_rows(range(a.cols))
