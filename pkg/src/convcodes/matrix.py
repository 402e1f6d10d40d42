"""Dense matrices over a finite field.

Entries are kept as canonical integer encodings and wrapped into
:class:`~convcodes.gf.FieldElement` on access, so large matrices over big
binary fields do not pay for one object per entry.  Indices are 0-based.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotSquare, SingularMatrix
from .gf import FieldElement, FieldSpec


def _as_int(field: FieldSpec, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldMismatch(f"{x.field} entry in a {field} matrix")
        return x.value
    return field(int(x)).value


class Matrix:
    """Immutable rows x cols matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Iterable):
        data = tuple(_as_int(field, x) for x in data)
        if len(data) != rows * cols:
            raise DimensionMismatch(f"{len(data)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    @classmethod
    def _raw(cls, field: FieldSpec, rows: int, cols: int, data: tuple[int, ...]) -> Matrix:
        self = object.__new__(cls)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)
        return self

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(field, len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence]) -> Matrix:
        return cls.from_rows(field, columns).T if columns else cls(field, 0, 0, [])

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return FieldElement(self.field, self._data[i * self.cols + j])

    def value(self, i: int, j: int) -> int:
        return self._data[i * self.cols + j]

    def row_values(self, i: int) -> tuple[int, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column_values(self, j: int) -> tuple[int, ...]:
        return self._data[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list[int]]:
        return [list(self.row_values(i)) for i in range(self.rows)]

    def entries(self) -> tuple[int, ...]:
        """Row-major integer encodings."""
        return self._data

    @property
    def T(self) -> Matrix:
        data = tuple(self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix._raw(self.field, self.cols, self.rows, data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self._data) == (other.field, other.rows, other.cols, other._data)

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in self.row_values(i)) for i in range(self.rows))
        return f"Matrix<{self.field!r} {self.rows}x{self.cols}>[{body}]"

    # -- arithmetic -------------------------------------------------------------
    def __matmul__(self, other: Matrix) -> Matrix:
        return mul(self, other)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add_int
        return Matrix._raw(self.field, self.rows, self.cols, tuple(add(a, b) for a, b in zip(self._data, other._data)))

    def scale(self, c: FieldElement) -> Matrix:
        mulf, c = self.field.mul_int, _as_int(self.field, c)
        return Matrix._raw(self.field, self.rows, self.cols, tuple(mulf(c, a) for a in self._data))


def _check_field(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def identity(field: FieldSpec, n: int) -> Matrix:
    return Matrix._raw(field, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))


def zeros(field: FieldSpec, rows: int, cols: int) -> Matrix:
    return Matrix._raw(field, rows, cols, (0,) * (rows * cols))


def diag(field: FieldSpec, values: Sequence) -> Matrix:
    n = len(values)
    vals = [_as_int(field, v) for v in values]
    return Matrix._raw(field, n, n, tuple(vals[i] if i == j else 0 for i in range(n) for j in range(n)))


def mul(a: Matrix, b: Matrix) -> Matrix:
    _check_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    f = a.field
    mulf, addf = f.mul_int, f.add_int
    bcols = [b.column_values(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        row = a.row_values(i)
        for col in bcols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = addf(acc, mulf(x, y))
            out.append(acc)
    return Matrix._raw(f, a.rows, b.cols, tuple(out))


def hconcat(*ms: Matrix) -> Matrix:
    if not ms:
        raise DimensionMismatch("nothing to concatenate")
    rows = ms[0].rows
    for m in ms[1:]:
        _check_field(ms[0], m)
        if m.rows != rows:
            raise DimensionMismatch(f"hconcat of {rows}-row and {m.rows}-row matrices")
    data = tuple(v for i in range(rows) for m in ms for v in m.row_values(i))
    return Matrix._raw(ms[0].field, rows, sum(m.cols for m in ms), data)


def vconcat(*ms: Matrix) -> Matrix:
    if not ms:
        raise DimensionMismatch("nothing to concatenate")
    cols = ms[0].cols
    for m in ms[1:]:
        _check_field(ms[0], m)
        if m.cols != cols:
            raise DimensionMismatch(f"vconcat of {cols}-col and {m.cols}-col matrices")
    return Matrix._raw(ms[0].field, sum(m.rows for m in ms), cols, tuple(v for m in ms for v in m._data))


def submatrix(m: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    """Rows and columns picked in the given order."""
    for i in row_idx:
        if not 0 <= i < m.rows:
            raise IndexError(f"row {i} out of range")
    for j in col_idx:
        if not 0 <= j < m.cols:
            raise IndexError(f"column {j} out of range")
    c = m.cols
    data = tuple(m._data[i * c + j] for i in row_idx for j in col_idx)
    return Matrix._raw(m.field, len(row_idx), len(col_idx), data)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------
def _det_rows(field: FieldSpec, a: list[list[int]]) -> int:
    """Determinant of a square list-of-rows; consumes ``a``."""
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    mulf, subf, invf = field.mul_int, field.sub_int, field.inv_int
    if n == 2:
        return subf(mulf(a[0][0], a[1][1]), mulf(a[0][1], a[1][0]))
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = field.neg_int(det)
        pv = a[c][c]
        det = mulf(det, pv)
        if c == n - 1:
            break
        pinv = invf(pv)
        prow = a[c]
        for r in range(c + 1, n):
            row = a[r]
            if row[c]:
                f = mulf(row[c], pinv)
                for k in range(c + 1, n):
                    if prow[k]:
                        row[k] = subf(row[k], mulf(f, prow[k]))
    return det


def _echelon(field: FieldSpec, a: list[list[int]]) -> tuple[int, list[int]]:
    """In-place row reduction; returns rank and pivot columns."""
    mulf, subf, invf = field.mul_int, field.sub_int, field.inv_int
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pinv = invf(a[r][c])
        prow = a[r] = [mulf(x, pinv) for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [subf(x, mulf(f, y)) if y else x for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return r, pivots


def det(m: Matrix) -> FieldElement:
    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    return FieldElement(m.field, _det_rows(m.field, m.to_lists()))


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return _echelon(m.field, m.to_lists())[0]


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise NotSquare(f"inverse of a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [list(m.row_values(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    r, pivots = _echelon(m.field, aug)
    if pivots[:n] != list(range(n)) or r < n:
        raise SingularMatrix("matrix is singular")
    return Matrix._raw(m.field, n, n, tuple(v for row in aug for v in row[n:]))


def solve(a: Matrix, b: Sequence) -> list[FieldElement]:
    """Solve ``a x = b`` for square nonsingular ``a``."""
    if a.rows != a.cols:
        raise NotSquare(f"solve with a {a.rows}x{a.cols} matrix")
    if len(b) != a.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {a.rows} equations")
    n = a.rows
    aug = [list(a.row_values(i)) + [_as_int(a.field, b[i])] for i in range(n)]
    r, pivots = _echelon(a.field, aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [FieldElement(a.field, aug[i][n]) for i in range(n)]


# ---------------------------------------------------------------------------
# superregularity
# ---------------------------------------------------------------------------
def find_singular_minor(m: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First singular square submatrix, or None if ``m`` is superregular.

    Minors are visited by size, then row subset, then column subset, each in
    lexicographic order, so the witness is deterministic.
    """
    field, cols, data = m.field, m.cols, m._data
    for t in range(1, min(m.rows, m.cols) + 1):
        col_sets = list(combinations(range(cols), t))
        for rs in combinations(range(m.rows), t):
            row_data = [data[i * cols:(i + 1) * cols] for i in rs]
            for cs in col_sets:
                a = [[row[j] for j in cs] for row in row_data]
                if _det_rows(field, a) == 0:
                    return rs, cs
    return None


def is_superregular(m: Matrix) -> bool:
    """True iff every square submatrix of ``m`` is nonsingular."""
    return find_singular_minor(m) is None


def count_square_minors(rows: int, cols: int) -> int:
    from math import comb

    return sum(comb(rows, t) * comb(cols, t) for t in range(1, min(rows, cols) + 1))
