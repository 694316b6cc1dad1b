"""Exact scalars and a small dense linear-algebra kernel.

Scalars are :class:`fractions.Fraction` over the rationals and
:class:`Residue` over a prime field.  Every routine here is exact and
deterministic: pivots are always the first nonzero entry found scanning a
column downward, so the same input gives bit-identical output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "FieldSpec", "QQ", "Residue", "Matrix", "Tensor3",
    "solve", "kernel_basis", "rank", "inverse", "trace", "determinant", "rref",
]

_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")
_MAX_PRIME = 2 ** 61


class Residue:
    """An element of Z/pZ kept in canonical form 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return Residue(pow(pow(self.value, -1, self.p), -k, self.p), self.p)
        return Residue(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        try:
            o = self._other(other)
        except ZeroDivisionError:
            return False
        if o is NotImplemented:
            return o
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _isprime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: rationals (characteristic 0) or GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            raise ValueError(f"characteristic must be a non-negative integer, got {c!r}")
        if c != 0:
            if c >= _MAX_PRIME:
                raise ValueError(f"characteristic {c} exceeds 2**61")
            if not _isprime(c):
                raise ValueError(f"characteristic {c} is not prime")

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, Residue or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise TypeError("booleans are not scalars")
        p = self.characteristic
        if p == 0:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, Residue):
            if x.p != p:
                raise ValueError(f"cannot coerce GF({x.p}) element into GF({p})")
            return x
        if isinstance(x, int):
            return Residue(x, p)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} is divisible by {p}")
            return Residue(x.numerator * pow(x.denominator, -1, p), p)
        raise TypeError(f"cannot coerce {x!r} into GF({p})")

    def parse(self, s: str):
        m = _SCALAR_RE.match(s)
        if not m:
            raise ValueError(f"malformed scalar {s!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in scalar {s!r}")
        return self(Fraction(num, den))

    def fmt(self, x) -> str:
        x = self(x)
        if isinstance(x, Residue):
            return str(x.value)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def vector(self, values: Iterable) -> tuple:
        return tuple(self(v) for v in values)


QQ = FieldSpec(0)


class Matrix:
    """Immutable dense matrix of exact scalars.

    Column ``j`` of an endomorphism matrix is the image of the ``j``-th basis
    vector.  ``M @ v`` with a tuple ``v`` applies the matrix to a vector.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        rows_ = tuple(tuple(r) for r in data)
        self.rows = len(rows_)
        if cols is None:
            cols = len(rows_[0]) if rows_ else 0
        if any(len(r) != cols for r in rows_):
            raise ValueError("ragged matrix")
        self.cols = cols
        self._e = rows_

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [tuple(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls([[c[i] for c in columns] for i in range(nrows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "Matrix":
        z = field.zero
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._e for x in r)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._e]

    @property
    def T(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return Matrix(
                [[_dot(r, c) for c in ocols] for r in self._e], cols=other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        return tuple(_dot(r, v) for r in self._e)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)],
                      cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)],
                      cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._e], cols=self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self._e], cols=self.cols)

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            inv = inverse(self)
            if inv is None:
                raise ZeroDivisionError("singular matrix")
            return inv ** (-k)
        out = None
        for _ in range(k):
            out = self if out is None else out @ self
        if out is None:
            field = _field_of(self.entries)
            return Matrix.identity(self.rows, field)
        return out

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.shape, self._e))

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self._e]})"


class Tensor3:
    """Rank-3 tensor stored flat; index (i, j, k) -> i*d1*d2 + j*d2 + k."""

    __slots__ = ("dims", "entries")

    def __init__(self, dims: tuple[int, int, int], entries: Sequence):
        entries = tuple(entries)
        d0, d1, d2 = dims
        if len(entries) != d0 * d1 * d2:
            raise ValueError(f"Tensor3 of dims {dims} needs {d0 * d1 * d2} entries, got {len(entries)}")
        self.dims = tuple(dims)
        self.entries = entries

    @classmethod
    def zeros(cls, dims, field: FieldSpec = QQ) -> "Tensor3":
        d0, d1, d2 = dims
        return cls(dims, [field.zero] * (d0 * d1 * d2))

    @classmethod
    def from_nested(cls, nested) -> "Tensor3":
        d0 = len(nested)
        d1 = len(nested[0])
        d2 = len(nested[0][0])
        flat = [nested[i][j][k] for i in range(d0) for j in range(d1) for k in range(d2)]
        return cls((d0, d1, d2), flat)

    def _flat(self, i, j, k) -> int:
        d0, d1, d2 = self.dims
        if not (0 <= i < d0 and 0 <= j < d1 and 0 <= k < d2):
            raise IndexError(f"index {(i, j, k)} out of range for dims {self.dims}")
        return (i * d1 + j) * d2 + k

    def __getitem__(self, ijk):
        return self.entries[self._flat(*ijk)]

    def with_entry(self, ijk, value) -> "Tensor3":
        e = list(self.entries)
        e[self._flat(*ijk)] = value
        return Tensor3(self.dims, e)

    def nested(self) -> list:
        d0, d1, d2 = self.dims
        return [[[self[i, j, k] for k in range(d2)] for j in range(d1)] for i in range(d0)]

    def nonzero(self):
        d0, d1, d2 = self.dims
        for i in range(d0):
            for j in range(d1):
                for k in range(d2):
                    v = self[i, j, k]
                    if v != 0:
                        yield (i, j, k), v

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and self.entries == other.entries

    def __hash__(self):
        return hash((self.dims, self.entries))

    def __repr__(self):
        return f"Tensor3({self.dims}, {[str(x) for x in self.entries]})"


def _dot(u, v):
    it = iter(zip(u, v))
    try:
        a, b = next(it)
    except StopIteration:
        return 0
    s = a * b
    for a, b in it:
        s = s + a * b
    return s


def _field_of(values) -> FieldSpec:
    for v in values:
        if isinstance(v, Residue):
            return FieldSpec(v.p)
    return QQ


def _as_matrix(A) -> Matrix:
    return A if isinstance(A, Matrix) else Matrix(A)


def _integer_rows(rows: list[list], field: FieldSpec) -> list[list]:
    # Scaling a row by a nonzero constant does not change its row space.
    if field.characteristic != 0:
        return [list(r) for r in rows]
    out = []
    for r in rows:
        m = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([Fraction(x) * m for x in r])
    return out


def _bareiss(rows: list[list], field: FieldSpec, ncols: int | None = None):
    """Fraction-free forward elimination.

    Returns (echelon rows, pivot columns, number of row swaps).  Only the
    first ``ncols`` columns are used as pivot candidates.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    width = len(m[0]) if m else 0
    if ncols is None:
        ncols = width
    prev = field.one
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            swaps += 1
        piv = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, width):
                row_i[j] = (row_i[j] * piv - f * row_r[j]) / prev
            row_i[c] = field.zero
        # rows above the pivot row keep their scale; rows below are divisible by prev
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def rref(A, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = _as_matrix(A)
    field = _field_of(A.entries)
    if A.rows == 0 or A.cols == 0:
        return A, []
    m, pivots, _ = _bareiss(_integer_rows(A.tolist(), field), field, ncols)
    width = A.cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(r):
            f = m[i][c]
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
    # Rows below the rank are zero but may carry integer-scaled zeros; normalise.
    for i in range(len(pivots), A.rows):
        m[i] = [field(0) if x == 0 else field(x) for x in m[i]]
    return Matrix([[field(x) for x in r] for r in m], cols=width), pivots


def rank(A) -> int:
    A = _as_matrix(A)
    if A.rows == 0 or A.cols == 0:
        return 0
    field = _field_of(A.entries)
    _, pivots, _ = _bareiss(_integer_rows(A.tolist(), field), field)
    return len(pivots)


def solve(A, b) -> tuple | None:
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    A = _as_matrix(A)
    b = tuple(b)
    if len(b) != A.rows:
        raise ValueError(f"solve: A has {A.rows} rows but b has length {len(b)}")
    field = _field_of(A.entries + b)
    if A.cols == 0:
        return () if all(x == 0 for x in b) else None
    aug = Matrix([list(r) + [bi] for r, bi in zip(A.tolist(), b)], cols=A.cols + 1)
    R, pivots = rref(aug, ncols=A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [field.zero] * A.cols
    for r, c in enumerate(pivots):
        x[c] = R[r, A.cols]
    return tuple(x)


def kernel_basis(A) -> list[tuple]:
    """Basis of the null space, one vector per free column in ascending order.

    Each vector has its free variable set to 1, the other free variables 0.
    """
    A = _as_matrix(A)
    field = _field_of(A.entries)
    n = A.cols
    if A.rows == 0:
        return [tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)]
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for r, c in enumerate(pivots):
            v[c] = -R[r, f]
        basis.append(tuple(v))
    return basis


def inverse(A) -> Matrix | None:
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise ValueError(f"inverse of non-square {A.shape} matrix")
    n = A.rows
    field = _field_of(A.entries)
    I = Matrix.identity(n, field)
    aug = Matrix([list(r) + list(e) for r, e in zip(A.tolist(), I.tolist())], cols=2 * n)
    R, pivots = rref(aug, ncols=n)
    if len(pivots) < n:
        return None
    return Matrix([R.row(i)[n:] for i in range(n)], cols=n)


def trace(A):
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise ValueError(f"trace of non-square {A.shape} matrix")
    field = _field_of(A.entries)
    s = field.zero
    for i in range(A.rows):
        s = s + A[i, i]
    return s


def determinant(A):
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise ValueError(f"determinant of non-square {A.shape} matrix")
    field = _field_of(A.entries)
    n = A.rows
    if n == 0:
        return field.one
    m, pivots, swaps = _bareiss(A.tolist(), field)
    if len(pivots) < n:
        return field.zero
    d = m[n - 1][n - 1]
    return field(-d if swaps % 2 else d)
