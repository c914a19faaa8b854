"""Exact rational linear algebra on sparse matrices.

Every scalar is a :class:`fractions.Fraction`; nothing in the package ever
touches floating point.  Vectors are plain ``dict`` objects mapping an index
to a nonzero ``Fraction``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Scalar = Fraction
Vector = dict  # int -> Fraction, zero entries never stored


class DimensionError(ValueError):
    """Raised when operands have inconsistent shapes."""

    def __init__(self, operand: str, message: str):
        self.operand = operand
        super().__init__(f"{operand}: {message}")


class SingularMatrixError(ArithmeticError):
    """Raised by :func:`invert_matrix`; carries a nonzero kernel vector."""

    def __init__(self, kernel_vector: Vector):
        self.kernel_vector = kernel_vector
        super().__init__(f"matrix is singular; kernel vector {format_vector(kernel_vector)}")


def parse_scalar(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a scalar: {text!r}")
    s = text.strip().replace("−", "-")
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(s)


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_vector(v: Mapping) -> str:
    return "{" + ", ".join(f"{k}: {format_scalar(c)}" for k, c in sorted(v.items())) + "}"


def clean(v: Mapping) -> dict:
    return {k: c for k, c in v.items() if c}


def axpy(target: dict, coef, v: Mapping) -> dict:
    """In place ``target += coef * v``; drops entries that cancel."""
    if not coef:
        return target
    for k, c in v.items():
        x = target.get(k, 0) + coef * c
        if x:
            target[k] = x
        else:
            target.pop(k, None)
    return target


class Matrix:
    """Sparse ``rows x cols`` matrix over the rationals.

    Entries are kept column-wise, which is the natural layout for linear maps
    given by the images of basis vectors.
    """

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("matrix", f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        columns: list[dict] = [dict() for _ in range(cols)]
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionError("matrix", f"entry ({r}, {c}) outside {rows}x{cols}")
            q = Fraction(value)
            if q:
                columns[c][r] = q
        self._columns = tuple(columns)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping[int, object]]) -> "Matrix":
        m = cls.__new__(cls)
        cols = []
        for j, col in enumerate(columns):
            d = {}
            for r, value in col.items():
                if not 0 <= r < rows:
                    raise DimensionError("matrix", f"row index {r} outside {rows} rows (column {j})")
                q = Fraction(value)
                if q:
                    d[r] = q
            cols.append(d)
        m.rows = rows
        m.cols = len(cols)
        m._columns = tuple(cols)
        return m

    @classmethod
    def from_rows(cls, rows: Iterable[Mapping[int, object]], cols: int) -> "Matrix":
        rows = list(rows)
        entries = {(i, j): c for i, row in enumerate(rows) for j, c in row.items()}
        return cls(len(rows), cols, entries)

    @classmethod
    def from_dense(cls, data) -> "Matrix":
        data = [list(r) for r in data]
        n = len(data[0]) if data else 0
        if any(len(r) != n for r in data):
            raise DimensionError("matrix", "ragged rows")
        return cls(len(data), n, {(i, j): x for i, r in enumerate(data) for j, x in enumerate(r) if x})

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_columns(n, ({j: 1} for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> dict:
        return dict(self._columns[j])

    def columns(self) -> tuple[dict, ...]:
        return self._columns

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): c for j, col in enumerate(self._columns) for i, c in sorted(col.items())}

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._columns[j].get(i, Fraction(0))

    def apply(self, v: Mapping[int, object]) -> dict:
        out: dict = {}
        for j, c in v.items():
            if not 0 <= j < self.cols:
                raise DimensionError("vector", f"index {j} outside {self.cols} columns")
            axpy(out, c, self._columns[j])
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError("right operand", f"cannot multiply {self.shape} by {other.shape}")
        return Matrix.from_columns(self.rows, (self.apply(col) for col in other._columns))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("right operand", f"cannot add {self.shape} and {other.shape}")
        return Matrix.from_columns(
            self.rows, (axpy(dict(a), 1, b) for a, b in zip(self._columns, other._columns))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("right operand", f"cannot subtract {other.shape} from {self.shape}")
        return Matrix.from_columns(
            self.rows, (axpy(dict(a), -1, b) for a, b in zip(self._columns, other._columns))
        )

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.cols, self.row_dicts())

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(col == {j: 1} for j, col in enumerate(self._columns))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self._columns)))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={sum(len(c) for c in self._columns)})"


class RowEchelon:
    """Incrementally maintained echelon basis of a row space.

    Rows are normalised to a leading 1 at their leftmost nonzero column.
    Call :meth:`reduced` to obtain the unique reduced row echelon form.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}  # pivot column -> row
        self._reduced = True

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _reduce(self, v: Mapping) -> dict:
        w = clean(v)
        rows = self.rows
        heap = [k for k in w if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = w.get(k)
            if not c:
                continue
            for col, x in rows[k].items():
                y = w.get(col, 0) - c * x
                if y:
                    if col not in w and col in rows:
                        heapq.heappush(heap, col)
                    w[col] = y
                else:
                    w.pop(col, None)
        return w

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; returns True when it enlarged the span."""
        for k in v:
            if not 0 <= k < self.ncols:
                raise DimensionError("vector", f"index {k} outside {self.ncols} columns")
        w = self._reduce(v)
        if not w:
            return False
        p = min(w)
        inv = 1 / w[p]
        self.rows[p] = {k: c * inv for k, c in w.items()}
        self._reduced = False
        return True

    def extend(self, vectors: Iterable[Mapping]) -> None:
        for v in vectors:
            self.add(v)

    def reduced(self) -> dict[int, dict]:
        """Back-substitute so every row vanishes at every other pivot."""
        if self._reduced:
            return self.rows
        rows = self.rows
        done: dict[int, dict] = {}
        for p in sorted(rows, reverse=True):
            row = rows[p]
            for q in sorted(k for k in row if k != p and k in done):
                c = row.get(q)
                if c:
                    axpy(row, -c, done[q])
            done[p] = row
        self._reduced = True
        return rows

    def reduce(self, v: Mapping) -> dict:
        """Remainder of ``v`` modulo the span (zero at every pivot)."""
        if not self._reduced:
            self.reduced()
        w = clean(v)
        for p in [k for k in w if k in self.rows]:
            c = w.get(p)
            if c:
                axpy(w, -c, self.rows[p])
        return w

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)


def rref(A: Matrix) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of ``A``: (nonzero rows, pivot columns)."""
    ech = RowEchelon(A.cols)
    ech.extend(A.row_dicts())
    rows = ech.reduced()
    pivots = sorted(rows)
    return [rows[p] for p in pivots], pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def kernel(A: Matrix) -> list[dict]:
    """Basis of the right kernel, one vector per free column (ascending)."""
    rows, pivots = rref(A)
    pivset = set(pivots)
    basis = []
    for f in range(A.cols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for p, row in zip(pivots, rows):
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Solution:
    member: bool
    coefficients: dict | None  # solution vector when member


def _gauss_jordan(row_list: list[dict], ncols: int) -> tuple[list[tuple[int, dict]], list[dict]]:
    """Row-by-row Gauss-Jordan on a copy of ``row_list``.

    Only columns below ``ncols`` are used as pivots.  Leftmost pivot first;
    among candidate rows the first (lowest index) one is chosen.  Returns the
    (pivot column, normalised row) pairs in pivot order and the leftover
    non-pivot rows.
    """
    rows = [clean(r) for r in row_list]
    by_col: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for k in r:
            by_col.setdefault(k, set()).add(i)
    used: set[int] = set()
    pivots: list[tuple[int, int]] = []

    def set_row(i: int, new: dict) -> None:
        old = rows[i]
        for k in old:
            if k not in new:
                by_col[k].discard(i)
        for k in new:
            if k not in old:
                by_col.setdefault(k, set()).add(i)
        rows[i] = new

    for col in range(ncols):
        cand = [i for i in by_col.get(col, ()) if i not in used]
        if not cand:
            continue
        i = min(cand)
        inv = 1 / rows[i][col]
        set_row(i, {k: c * inv for k, c in rows[i].items()})
        used.add(i)
        pivots.append((col, i))
        prow = rows[i]
        for j in sorted(by_col.get(col, set()) - {i}):
            c = rows[j].get(col)
            if c:
                set_row(j, axpy(dict(rows[j]), -c, prow))
    return [(col, rows[i]) for col, i in pivots], [r for i, r in enumerate(rows) if i not in used]


def rref_solve(A: Matrix, targets: Iterable[Mapping[int, object]]) -> list[Solution]:
    """Decide ``A x = v`` for every target ``v``.

    Free variables are set to zero, so identical inputs always give the same
    coefficient vector.
    """
    targets = [clean({k: Fraction(c) for k, c in t.items()}) for t in targets]
    for t in targets:
        for k in t:
            if not 0 <= k < A.rows:
                raise DimensionError("target", f"index {k} outside {A.rows} rows")
    n = A.cols
    rows = A.row_dicts()
    for r, row in enumerate(rows):
        for j, t in enumerate(targets):
            c = t.get(r)
            if c:
                row[n + j] = c
    lead, rest = _gauss_jordan(rows, n)
    out = []
    for j in range(len(targets)):
        # a leftover row reads 0 = c for this target
        if any(row.get(n + j) for row in rest):
            out.append(Solution(False, None))
            continue
        x = {}
        for col, row in lead:
            c = row.get(n + j)
            if c:
                x[col] = c
        out.append(Solution(True, x))
    return out


def solve(A: Matrix, v: Mapping[int, object]) -> Solution:
    return rref_solve(A, [v])[0]


def invert_matrix(A: Matrix) -> Matrix:
    """Exact inverse of a square matrix.

    Raises :class:`SingularMatrixError` with a kernel vector when ``A`` is
    singular.
    """
    if A.rows != A.cols:
        raise DimensionError("A", f"cannot invert non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    rows = A.row_dicts()
    for i, row in enumerate(rows):
        row[n + i] = Fraction(1)
    lead, _ = _gauss_jordan(rows, n)
    if len(lead) < n:
        raise SingularMatrixError(kernel(A)[0])
    inv_rows = [None] * n
    for col, row in lead:
        inv_rows[col] = {k - n: c for k, c in row.items() if k >= n}
    return Matrix.from_rows(inv_rows, n)


def matrix_power(A: Matrix, k: int) -> Matrix:
    out = Matrix.identity(A.rows)
    for _ in range(k):
        out = A @ out
    return out
