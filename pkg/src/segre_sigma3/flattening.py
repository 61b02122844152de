"""Flattenings A_I* -> A_J and the concise (subspace-variety) reduction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInputError, ShapeError
from .exact import ExactMatrix, int_rank, inverse, pivot_columns
from .tensor import ModeMap, Tensor, apply_mode_map

__all__ = [
    "Bipartition",
    "ConciseCore",
    "bipartitions",
    "flatten",
    "flattening_rank",
    "mode_rank",
    "concise_core",
]


@dataclass(frozen=True)
class Bipartition:
    """Split of the modes into row modes ``left`` and column modes ``right``."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(int(i) for i in self.left)))
        object.__setattr__(self, "right", tuple(sorted(int(i) for i in self.right)))

    @classmethod
    def from_left(cls, left: Iterable[int], order: int) -> "Bipartition":
        left = sorted(set(int(i) for i in left))
        return cls(tuple(left), tuple(i for i in range(order) if i not in left))

    def validate(self, order: int) -> None:
        both = set(self.left) | set(self.right)
        if (
            not self.left
            or not self.right
            or set(self.left) & set(self.right)
            or both != set(range(order))
            or len(self.left) + len(self.right) != order
        ):
            raise ShapeError(f"{self.left}|{self.right} is not a bipartition of {order} modes")

    def complement(self) -> "Bipartition":
        return Bipartition(self.right, self.left)

    def as_lists(self) -> list[list[int]]:
        return [list(self.left), list(self.right)]


def bipartitions(order: int) -> list[Bipartition]:
    """Proper bipartitions up to complement, as the left sets containing mode 0.

    Ordered lexicographically by the left tuple: 2**(order-1) - 1 of them.
    """
    lefts = []
    others = range(1, order)
    for k in range(0, order - 1):
        for extra in combinations(others, k):
            lefts.append((0,) + extra)
    lefts.sort()
    return [Bipartition.from_left(left, order) for left in lefts]


def unfold(arr: np.ndarray, left: Sequence[int], right: Sequence[int]) -> np.ndarray:
    """Reshape an order-n array into a (prod left) x (prod right) array."""
    rows = math.prod(arr.shape[i] for i in left)
    cols = math.prod(arr.shape[j] for j in right)
    return np.transpose(arr, tuple(left) + tuple(right)).reshape(rows, cols)


def flatten(t: Tensor, p: Bipartition) -> ExactMatrix:
    """Matrix of T with rows indexed by the modes in ``p.left``, columns by ``p.right``.

    Both index sets are lexicographic in increasing mode order, last mode fastest.
    """
    p.validate(t.order)
    arr = unfold(t.array, p.left, p.right)
    return ExactMatrix.from_flat(arr.shape[0], arr.shape[1], arr.flat)


def _int_rows(arr: np.ndarray) -> list[list[int]]:
    out = []
    for row in arr.tolist():
        den = math.lcm(*(x.denominator for x in row))
        if den == 1:
            out.append([x.numerator for x in row])
        else:
            out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def array_rank(arr: np.ndarray, left: Sequence[int], right: Sequence[int]) -> int:
    """Rank of the unfolding of a Fraction or int object array."""
    return int_rank(_int_rows(unfold(arr, left, right)))


def flattening_rank(t: Tensor, p: Bipartition) -> int:
    p.validate(t.order)
    return array_rank(t.array, p.left, p.right)


def mode_rank(t: Tensor, mode: int) -> int:
    """dim T(A_mode-hat*): rank of the single-mode flattening."""
    return flattening_rank(t, Bipartition.from_left([mode], t.order))


@dataclass(frozen=True)
class ConciseCore:
    """``core`` with per-mode ``embeddings`` (full column rank) reproducing the input."""

    core: Tensor
    embeddings: tuple[ExactMatrix, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return self.core.shape

    def reconstruct(self) -> Tensor:
        t = self.core
        for mode, e in enumerate(self.embeddings):
            t = apply_mode_map(t, ModeMap(mode, e))
        return t


def concise_core(t: Tensor) -> ConciseCore:
    """Re-express ``t`` on the images of its single-mode flattenings.

    For each mode the basis is the first linearly independent columns of the
    mode unfolding; core coordinates come from a left inverse of that basis.
    """
    if t.is_zero():
        raise DegenerateInputError("the zero tensor has no concise core")
    core = t
    embeddings = []
    for mode in range(t.order):
        mat = flatten(t, Bipartition.from_left([mode], t.order))
        cols = pivot_columns(mat)
        basis = ExactMatrix([[mat[i, c] for c in cols] for i in range(mat.rows)], rows=mat.rows, cols=len(cols))
        rows = pivot_columns(basis.T)
        square = ExactMatrix([list(basis.row(i)) for i in rows], rows=len(rows), cols=len(cols))
        select = ExactMatrix(
            [[1 if j == i else 0 for j in range(basis.rows)] for i in rows], rows=len(rows), cols=basis.rows
        )
        left_inverse = inverse(square) @ select
        core = apply_mode_map(core, ModeMap(mode, left_inverse))
        embeddings.append(basis)
    return ConciseCore(core, tuple(embeddings))
