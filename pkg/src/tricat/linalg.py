"""Dense exact linear algebra over the rationals and prime fields.

Matrices wrap numpy arrays. Rational entries are stored as ``Fraction``
objects in an object array; prime-field entries are machine integers in
``[0, p)`` (object arrays of Python ints when ``p`` is too large for the
int64 fast path).
"""

from __future__ import annotations

from random import Random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

from .errors import FieldMismatch, NoSolution, ShapeMismatch

_INT64_SAFE_P = 1 << 25


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or the prime field of order ``p``."""

    p: int | None = None

    @classmethod
    def parse(cls, spec: str) -> "Field":
        spec = spec.strip()
        if spec == "Q":
            return cls(None)
        if spec.startswith("Fp:"):
            try:
                p = int(spec[3:])
            except ValueError as exc:
                raise ValueError(f"bad field spec {spec!r}") from exc
            if p >= 1 << 31 or not isprime(p):
                raise ValueError(f"field order must be a prime below 2**31, got {p}")
            return cls(p)
        raise ValueError(f"bad field spec {spec!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_SAFE_P:
            return np.int64
        return object

    def coerce(self, value):
        if self.p is None:
            if isinstance(value, float):
                raise TypeError("floating point values are not exact")
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(int(a), -1, self.p)

    def random(self, rng: Random, span: int = 3):
        if self.p is None:
            num = rng.randint(-span, span)
            den = rng.choice([1, 1, 1, 2, 3])
            return Fraction(num, den)
        return rng.randrange(self.p)

    def reduce_array(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            a %= self.p
        return a

    def array(self, rows: Sequence[Sequence], r: int, c: int) -> np.ndarray:
        out = np.empty((r, c), dtype=self.dtype)
        if self.dtype is object:
            out[...] = self.zero
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ShapeMismatch(f"row {i} has length {len(row)}, expected {c}")
            for j, v in enumerate(row):
                out[i, j] = self.coerce(v)
        return out

    def element_to_json(self, v):
        if self.p is None:
            v = Fraction(v)
            return [str(v.numerator), str(v.denominator)]
        return int(v)

    def element_from_json(self, v):
        if isinstance(v, list):
            if len(v) != 2:
                raise ValueError(f"rational entry must be [num, den], got {v!r}")
            num, den = int(v[0]), int(v[1])
            if den == 0:
                raise ValueError("zero denominator")
            return self.coerce(Fraction(num, den))
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ValueError(f"bad matrix entry {v!r}")
        return self.coerce(int(v))


class Matrix:
    """Immutable dense matrix over a ``Field``."""

    __slots__ = ("field", "a", "_hash")

    def __init__(self, field: Field, a: np.ndarray):
        if a.ndim != 2:
            raise ShapeMismatch("matrix data must be two-dimensional")
        a.flags.writeable = False
        self.field = field
        self.a = a
        self._hash = None

    # construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows_data: Sequence[Sequence], *, rows: int | None = None,
                  cols: int | None = None) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        r = len(rows_data) if rows is None else rows
        c = (len(rows_data[0]) if rows_data else 0) if cols is None else cols
        if len(rows_data) != r:
            raise ShapeMismatch(f"expected {r} rows, got {len(rows_data)}")
        return cls(field, field.array(rows_data, r, c))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "Matrix":
        a = np.zeros((r, c), dtype=field.dtype)
        if field.dtype is object:
            a[...] = field.zero
        return cls(field, a)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        a = np.zeros((n, n), dtype=field.dtype)
        if field.dtype is object:
            a[...] = field.zero
        for i in range(n):
            a[i, i] = field.one
        return cls(field, a)

    @classmethod
    def unit(cls, field: Field, r: int, c: int, i: int, j: int) -> "Matrix":
        a = cls.zeros(field, r, c).a.copy()
        a[i, j] = field.one
        return cls(field, a)

    @classmethod
    def hstack(cls, mats: Sequence["Matrix"], rows: int | None = None, field: Field | None = None) -> "Matrix":
        f = _common_field(mats, field)
        if not mats:
            return cls.zeros(f, rows or 0, 0)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ShapeMismatch("hstack needs equal row counts")
        return cls(f, np.hstack([m.a for m in mats]).astype(f.dtype, copy=False))

    @classmethod
    def vstack(cls, mats: Sequence["Matrix"], cols: int | None = None, field: Field | None = None) -> "Matrix":
        f = _common_field(mats, field)
        if not mats:
            return cls.zeros(f, 0, cols or 0)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ShapeMismatch("vstack needs equal column counts")
        return cls(f, np.vstack([m.a for m in mats]).astype(f.dtype, copy=False))

    @classmethod
    def block_diag(cls, mats: Sequence["Matrix"], field: Field | None = None) -> "Matrix":
        f = _common_field(mats, field)
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = cls.zeros(f, r, c).a.copy()
        i = j = 0
        for m in mats:
            out[i:i + m.rows, j:j + m.cols] = m.a
            i += m.rows
            j += m.cols
        return cls(f, out)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block must be given (use zeros)."""
        return cls.vstack([cls.hstack(list(row)) for row in grid])

    # basic protocol ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def tolist(self) -> list[list]:
        if self.field.p is None:
            return [[Fraction(v) for v in row] for row in self.a.tolist()]
        return [[int(v) for v in row] for row in self.a.tolist()]

    def entries(self) -> list:
        return [v for row in self.tolist() for v in row]

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.tolist()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.shape, tuple(self.entries())))
        return self._hash

    def is_zero(self) -> bool:
        return bool(np.all(self.a == 0))

    def _check(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce_array(self.a + other.a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce_array(self.a - other.a))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.reduce_array(-self.a))

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, self.field.reduce_array(self.a * c))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        if self.cols == 0:
            return Matrix.zeros(f, self.rows, other.cols)
        if f.dtype is np.int64 and self.cols * (f.p - 1) ** 2 >= 1 << 62:
            prod = (self.a.astype(object) @ other.a.astype(object)) % f.p
            return Matrix(f, prod.astype(np.int64))
        return Matrix(f, f.reduce_array(self.a @ other.a))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    def __getitem__(self, key) -> "Matrix":
        rs, cs = key
        sub = self.a[rs, cs]
        if sub.ndim != 2:
            raise IndexError("use slices or index lists to extract submatrices")
        return Matrix(self.field, sub.copy())

    def entry(self, i: int, j: int):
        v = self.a[i, j]
        return Fraction(v) if self.field.p is None else int(v)

    def column(self, j: int) -> "Matrix":
        return self[:, [j]]

    def columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.a[:, list(idx)].reshape(self.rows, len(idx)).copy())

    def rows_at(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, self.a[list(idx), :].reshape(len(idx), self.cols).copy())

    def vec(self) -> "Matrix":
        """Row-major flattening as a column vector."""
        return Matrix(self.field, self.a.reshape(self.rows * self.cols, 1).copy())

    @classmethod
    def unvec(cls, v: "Matrix", r: int, c: int) -> "Matrix":
        return cls(v.field, v.a.reshape(r, c).copy())

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [self.field.element_to_json(v) for v in self.entries()],
        }

    @classmethod
    def from_json(cls, doc: dict, field: Field | None = None) -> "Matrix":
        try:
            f = Field.parse(doc["field"]) if "field" in doc else field
            r, c = int(doc["rows"]), int(doc["cols"])
            entries = doc["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix literal: {exc}") from exc
        if f is None:
            raise ValueError("matrix literal has no field")
        if field is not None and f != field:
            raise FieldMismatch(f"matrix over {f}, expected {field}")
        if r < 0 or c < 0 or len(entries) != r * c:
            raise ValueError(f"expected {r}x{c} entries, got {len(entries)}")
        vals = [f.element_from_json(v) for v in entries]
        return cls.from_rows(f, [vals[i * c:(i + 1) * c] for i in range(r)], rows=r, cols=c)


def _common_field(mats: Sequence[Matrix], field: Field | None) -> Field:
    fields = {m.field for m in mats}
    if field is not None:
        fields.add(field)
    if len(fields) > 1:
        raise FieldMismatch(f"mixed fields: {sorted(map(str, fields))}")
    if not fields:
        raise ValueError("cannot infer the field of an empty block list")
    return fields.pop()


# -- elimination ---------------------------------------------------------------


def _rref_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = a.copy()
    a.flags.writeable = True
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    p = field.p
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(a[r, c])
        a[r] = a[r] * inv
        if p is not None:
            a[r] %= p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col != 0)
        if hit.size:
            a[hit] = a[hit] - np.outer(col[hit], a[r])
            if p is not None:
                a[hit] %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    red, piv = _rref_array(m.field, m.a)
    return Matrix(m.field, red), piv, len(piv)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.field, m.a)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space, one per free column in order."""
    red, piv = _rref_array(m.field, m.a)
    f = m.field
    free = [j for j in range(m.cols) if j not in set(piv)]
    out = Matrix.zeros(f, m.cols, len(free)).a.copy()
    for k, j in enumerate(free):
        out[j, k] = f.one
        for i, pc in enumerate(piv):
            out[pc, k] = f.neg(red[i, j])
    return Matrix(f, out)


def cokernel_projection(m: Matrix) -> Matrix:
    """A full-row-rank matrix P with P @ m = 0 and rows(P) = rows(m) - rank(m)."""
    return kernel_basis(m.T).T


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``: a basis of its column space."""
    _, piv = _rref_array(m.field, m.a)
    return m.columns(piv)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Some X with a @ X = b; raises NoSolution when b is outside the column space."""
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve needs equal row counts, got {a.shape} and {b.shape}")
    a._check(b)
    aug = Matrix.hstack([a, b])
    red, piv = _rref_array(a.field, aug.a)
    if any(c >= a.cols for c in piv):
        raise NoSolution("right-hand side is not in the column space")
    x = Matrix.zeros(a.field, a.cols, b.cols).a.copy()
    for i, c in enumerate(piv):
        x[c] = red[i, a.cols:]
    return Matrix(a.field, x)


def solve_left(a: Matrix, b: Matrix) -> Matrix:
    """Some X with X @ a = b."""
    return solve(a.T, b.T).T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices can be inverted")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if rank(m) != m.rows:
        raise NoSolution("matrix is singular")
    return x


def complement_basis(sub: Matrix, n: int, field: Field) -> Matrix:
    """Standard basis vectors completing the columns of ``sub`` to a basis of K^n."""
    aug = Matrix.hstack([sub, Matrix.identity(field, n)])
    _, piv = _rref_array(field, aug.a)
    extra = [c - sub.cols for c in piv if c >= sub.cols]
    return Matrix.identity(field, n).columns(extra)


class QuotientSpace:
    """Presentation of Z/B for subspaces B of Z of some K^n, given by spanning columns.

    ``basis`` holds representatives of a basis of the quotient; ``coords``
    maps a vector of Z to its coordinates in that basis.
    """

    def __init__(self, z: Matrix, b: Matrix):
        f = z.field
        n = z.rows
        if b.rows != n:
            raise ShapeMismatch("Z and B must live in the same ambient space")
        b_basis = image_basis(b) if b.cols else Matrix.zeros(f, n, 0)
        aug = Matrix.hstack([b_basis, z])
        _, piv = _rref_array(f, aug.a)
        self.field = f
        self.ambient = n
        self.basis = z.columns([c - b_basis.cols for c in piv if c >= b_basis.cols])
        self.boundary = b_basis
        self.dim = self.basis.cols
        frame = Matrix.hstack([self.boundary, self.basis], rows=n, field=f)
        self._frame_cols = frame.cols
        self._nb = b_basis.cols
        # left inverse of the frame: L @ frame = I
        if frame.cols:
            self._left = solve(frame.T, Matrix.identity(f, frame.cols)).T
        else:
            self._left = Matrix.zeros(f, 0, n)

    def coords_matrix(self, vs: Matrix) -> Matrix:
        """Coordinates of each column of ``vs`` (assumed to lie in Z)."""
        return (self._left @ vs)[self._nb:, :]

    def coords(self, v: Matrix) -> list:
        return [row[0] for row in self.coords_matrix(v).tolist()]

    def in_boundary(self, v: Matrix) -> bool:
        """Whether a vector of Z lies in B."""
        return self.coords_matrix(v).is_zero()

    def lift(self, c: Sequence) -> Matrix:
        col = Matrix.from_rows(self.field, [[x] for x in c], rows=len(c), cols=1)
        return self.basis @ col


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; with row-major vec, vec(A X B) = kron(A, B.T) @ vec(X)."""
    a._check(b)
    f = a.field
    if 0 in a.shape or 0 in b.shape:
        return Matrix.zeros(f, a.rows * b.rows, a.cols * b.cols)
    out = np.kron(a.a, b.a)
    if f.dtype is object:
        out = out.astype(object)
    else:
        out = out.astype(np.int64)
    return Matrix(f, f.reduce_array(out))
