"""Exact rational matrices: rank, kernel, determinant, adjugate.

Scalars are :class:`fractions.Fraction` values, which are always stored in
canonical reduced form with a positive denominator.  Rank and determinant are
computed by fraction-free (Bareiss) elimination on integer rows obtained by
clearing denominators row by row; row scaling by a nonzero integer does not
change the rank, and the determinant is corrected for it afterwards.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import ShapeError

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "ExactMatrix",
    "identity",
    "rank",
    "pivot_columns",
    "kernel_basis",
    "det",
    "det3_adjugate",
    "adjugate",
    "inverse",
]


def as_rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction. Floats are refused to keep results exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (Integral, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    # numpy integer scalars are registered as Integral; anything else is suspect
    raise TypeError(f"cannot use {type(x).__name__} value {x!r} as an exact rational")


class ExactMatrix:
    """Immutable dense matrix over the rationals.

    ``entries`` is the row-major tuple of length ``rows * cols``.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence] = (), *, rows: int | None = None, cols: int | None = None):
        lists = [tuple(as_rational(x) for x in row) for row in data]
        if rows is None:
            rows = len(lists)
        if cols is None:
            cols = len(lists[0]) if lists else 0
        if len(lists) != rows or any(len(r) != cols for r in lists):
            raise ShapeError(f"ragged or mis-sized matrix data for a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(x for r in lists for x in r))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Iterable) -> "ExactMatrix":
        flat = [as_rational(x) for x in entries]
        if len(flat) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(flat)}")
        return cls([flat[i * cols:(i + 1) * cols] for i in range(rows)], rows=rows, cols=cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls.from_flat(rows, cols, [0] * (rows * cols))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix.from_flat(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.entries[j::other.cols] for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols])
            return ExactMatrix(out, rows=self.rows, cols=other.cols)
        vec = [as_rational(x) for x in other]
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} does not match {self.cols} columns")
        return [sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0)) for i in range(self.rows)]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix.from_flat(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix.from_flat(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "ExactMatrix":
        c = as_rational(c)
        return ExactMatrix.from_flat(self.rows, self.cols, [c * a for a in self.entries])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"ExactMatrix([{body}])"


def identity(n: int) -> ExactMatrix:
    return ExactMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], rows=n, cols=n)


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for i in range(m.rows):
        row = m.row(i)
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        if den == 1:
            out.append([x.numerator for x in row])
        else:
            out.append([x.numerator * (den // x.denominator) for x in row])
        scales.append(den)
    return out, scales


def _bareiss(a: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """In-place fraction-free elimination.

    Returns the pivot columns and the number of row swaps.  Every intermediate
    entry is a minor of the input, so the floor division is exact.
    """
    nrows = len(a)
    pivots: list[int] = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and a[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
            swaps += 1
        prow = a[r]
        pv = prow[c]
        tail = range(c + 1, ncols)
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f == 0:
                if prev == 1:
                    for j in tail:
                        row[j] *= pv
                else:
                    for j in tail:
                        row[j] = row[j] * pv // prev
            else:
                for j in tail:
                    row[j] = (row[j] * pv - f * prow[j]) // prev
                row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, swaps


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    # eliminate along the shorter side
    if m.cols < m.rows:
        a = [list(col) for col in zip(*a)]
        return len(_bareiss(a, m.rows)[0])
    return len(_bareiss(a, m.cols)[0])


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as a list of rows (consumed)."""
    if not rows or not rows[0]:
        return 0
    if len(rows[0]) < len(rows):
        rows = [list(col) for col in zip(*rows)]
    return len(_bareiss(rows, len(rows[0]))[0])


def int_pivot_columns(rows: list[list[int]], ncols: int) -> list[int]:
    """Pivot columns of an integer matrix given as a list of rows (consumed)."""
    if not rows or ncols == 0:
        return []
    return _bareiss(rows, ncols)[0]


def pivot_columns(m: ExactMatrix) -> list[int]:
    """Indices of the first linearly independent columns, scanning left to right."""
    if m.rows == 0 or m.cols == 0:
        return []
    a, _ = _integer_rows(m)
    return _bareiss(a, m.cols)[0]


def _rref(m: ExactMatrix) -> tuple[list[list[Fraction]], list[int]]:
    a, _ = _integer_rows(m)
    rows = [[Fraction(x) for x in r] for r in a]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        prow = rows[r]
        for i in range(m.rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return rows[:r], pivots


def kernel_basis(m: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space.

    One vector per free column of the reduced echelon form, with the free
    variable set to 1 and the sign flipped so the first nonzero coordinate
    is positive.
    """
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)]
    rows, pivots = _rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        first = next(x for x in v if x != 0)
        if first < 0:
            v = [-x for x in v]
        basis.append(tuple(v))
    return basis


def det(m: ExactMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ShapeError(f"determinant needs a square matrix, got {m.shape}")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scales = _integer_rows(m)
    pivots, swaps = _bareiss(a, n)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(a[n - 1][n - 1], math.prod(scales))
    return -d if swaps % 2 else d


def det3_adjugate(m: ExactMatrix) -> ExactMatrix:
    """Classical adjugate of a 3x3 matrix, so that ``m @ adj = det(m) I``."""
    if m.shape != (3, 3):
        raise ShapeError(f"det3_adjugate needs a 3x3 matrix, got {m.shape}")
    a = m.to_lists()

    def cof(i, j):
        r = [x for x in range(3) if x != i]
        c = [y for y in range(3) if y != j]
        minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adj is the transpose of the cofactor matrix
    return ExactMatrix([[cof(j, i) for j in range(3)] for i in range(3)], rows=3, cols=3)


def adjugate(m: ExactMatrix) -> ExactMatrix:
    """Adjugate of a square matrix of any size: ``m @ adj = adj @ m = det(m) I``."""
    if m.rows != m.cols:
        raise ShapeError(f"adjugate needs a square matrix, got {m.shape}")
    n = m.rows
    if n == 1:
        return identity(1)
    r = rank(m)
    if r == n:
        return inverse(m).scale(det(m))
    if r < n - 1:
        # every (n-1)-minor vanishes
        return ExactMatrix.zeros(n, n)
    a = m.to_lists()

    def cof(i, j):
        minor = [[a[x][y] for y in range(n) if y != j] for x in range(n) if x != i]
        d = det(ExactMatrix(minor, rows=n - 1, cols=n - 1))
        return -d if (i + j) % 2 else d

    return ExactMatrix([[cof(j, i) for j in range(n)] for i in range(n)], rows=n, cols=n)


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ShapeError(f"inverse needs a square matrix, got {m.shape}")
    n = m.rows
    aug = ExactMatrix([list(m.row(i)) + [int(i == j) for j in range(n)] for i in range(n)], rows=n, cols=2 * n)
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([r[n:] for r in rows], rows=n, cols=n)
