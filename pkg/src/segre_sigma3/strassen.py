"""Exterior flattenings T^wedge_{BA}: A (x) B* -> Lambda^2 A (x) C and what is built on them.

The rows of an exterior flattening are indexed by ((i, j), c) with i < j in
lexicographic order and c the lexicographic multi-index over the grouped
modes; the columns by (l, beta), A-index first.  The basis vector a_l (x) b^beta
maps to sum_{i,k} T[i, beta, k] (a_l ^ a_i) (x) c_k with a_l ^ a_i = -(a_i ^ a_l).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import ContractError, ShapeError, UnsupportedError
from .exact import ExactMatrix, det, det3_adjugate, int_pivot_columns, int_rank, kernel_basis
from .flattening import concise_core
from .tensor import ModeMap, Tensor, apply_mode_map

__all__ = [
    "Tripartition",
    "PairMap",
    "StrassenReport",
    "exterior_flattening",
    "strassen_ok",
    "strassen_commutator",
    "kernel_full_rank_element",
    "symmetrize_pair",
]


@dataclass(frozen=True)
class Tripartition:
    """Mode ``a_mode`` plays A, ``b_mode`` plays B, and ``rest`` is grouped into C."""

    a_mode: int
    b_mode: int
    rest: tuple[int, ...]

    @classmethod
    def for_pair(cls, a_mode: int, b_mode: int, order: int) -> "Tripartition":
        return cls(a_mode, b_mode, tuple(i for i in range(order) if i not in (a_mode, b_mode)))

    def validate(self, order: int) -> None:
        modes = [self.a_mode, self.b_mode, *self.rest]
        if self.a_mode == self.b_mode or sorted(modes) != list(range(order)):
            raise ShapeError(f"({self.a_mode}, {self.b_mode}, {self.rest}) is not a tripartition of {order} modes")

    @property
    def axes(self) -> tuple[int, ...]:
        return (self.a_mode, self.b_mode, *self.rest)


@dataclass(frozen=True)
class PairMap:
    """Kernel element read as a map B -> A: ``matrix`` is dim A x dim B."""

    matrix: ExactMatrix


@dataclass(frozen=True)
class StrassenReport:
    ok: bool
    rank: int
    bound: int
    dim_a: int

    def __bool__(self):
        return self.ok


def _three_way(arr: np.ndarray, p: Tripartition) -> np.ndarray:
    shape = arr.shape
    dc = math.prod(shape[i] for i in p.rest)
    return np.transpose(arr, p.axes).reshape(shape[p.a_mode], shape[p.b_mode], dc)


def _wedge_rows(t3, da: int, db: int, dc: int, zero):
    """Dense row lists of the exterior flattening of a 3-way array ``t3``."""
    pairs = {pair: n for n, pair in enumerate(combinations(range(da), 2))}
    nrows = len(pairs) * dc
    ncols = da * db
    rows = [[zero] * ncols for _ in range(nrows)]
    for l in range(da):
        for beta in range(db):
            col = l * db + beta
            for i in range(da):
                if i == l:
                    continue
                block = pairs[(l, i)] if l < i else pairs[(i, l)]
                sign_pos = l < i
                base = block * dc
                fiber = t3[i][beta]
                for k in range(dc):
                    v = fiber[k]
                    if v:
                        if sign_pos:
                            rows[base + k][col] += v
                        else:
                            rows[base + k][col] -= v
    return rows


def exterior_flattening(t: Tensor, p: Tripartition) -> ExactMatrix:
    """Matrix of A (x) B* -> Lambda^2 A (x) C, composing Id_A (x) T with the wedge projection."""
    p.validate(t.order)
    da = t.shape[p.a_mode]
    if da < 2:
        raise UnsupportedError(f"mode {p.a_mode} has dim {da} < 2, so Lambda^2 A = 0")
    t3 = _three_way(t.array, p)
    db, dc = t3.shape[1], t3.shape[2]
    rows = _wedge_rows(t3.tolist(), da, db, dc, Fraction(0))
    return ExactMatrix(rows, rows=len(rows), cols=da * db)


def _integer_array(arr: np.ndarray) -> np.ndarray:
    """Positive rescaling of a Fraction array to integers (ranks are unchanged)."""
    den = math.lcm(*(x.denominator for x in arr.flat))
    out = np.empty(arr.shape, dtype=object)
    out.flat[:] = [x.numerator * (den // x.denominator) for x in arr.flat]
    return out


def _compress_rest(t3: np.ndarray) -> np.ndarray:
    """Keep a column basis of the (A B) x C unfolding of an integer array.

    T = T' composed with a full-row-rank map C' -> C, and Id (x) that map is
    injective on Lambda^2 A (x) C', so the exterior-flattening rank is unchanged.
    """
    da, db, dc = t3.shape
    unfold = t3.reshape(da * db, dc)
    cols = int_pivot_columns(unfold.tolist(), dc)
    return t3[:, :, cols]


def concise_strassen_rank(core_int: np.ndarray, a_mode: int, b_mode: int) -> int:
    """Exterior-flattening rank of an integer concise core, after compressing C."""
    p = Tripartition.for_pair(a_mode, b_mode, core_int.ndim)
    t3 = _compress_rest(_three_way(core_int, p))
    da, db, dc = t3.shape
    if da < 2 or dc == 0:
        return 0
    return int_rank(_wedge_rows(t3.tolist(), da, db, dc, 0))


def strassen_ok(t: Tensor, p: Tripartition, r: int) -> StrassenReport:
    """Check rank(T^wedge_{BA}) <= r (dim A - 1) with dim A the concise a-mode dimension.

    The test is run on the concise core so that dim A and the wedge space
    refer to the same subspace of A.
    """
    p.validate(t.order)
    if t.is_zero():
        return StrassenReport(True, 0, 0, 0)
    core = _integer_array(concise_core(t).core.array)
    dim_a = core.shape[p.a_mode]
    bound = r * (dim_a - 1)
    if dim_a < 2:
        return StrassenReport(True, 0, bound, dim_a)
    rk = concise_strassen_rank(core, p.a_mode, p.b_mode)
    return StrassenReport(rk <= bound, rk, bound, dim_a)


def strassen_commutator(t: Tensor) -> list[Fraction]:
    """Entries of T1 adj(T0) T2 - T2 adj(T0) T1 for the mode-0 slices of a 3x3x3 tensor."""
    if t.shape != (3, 3, 3):
        raise ShapeError(f"the commutator is defined for 3x3x3 tensors, got {t.shape}")
    s0, s1, s2 = (ExactMatrix(t.array[k].tolist(), rows=3, cols=3) for k in range(3))
    adj = det3_adjugate(s0)
    c = s1 @ adj @ s2 - s2 @ adj @ s1
    return list(c.entries)


def _as_pair_map(v: Sequence[Fraction], da: int, db: int) -> ExactMatrix:
    return ExactMatrix.from_flat(da, db, v)


def kernel_full_rank_element(t: Tensor, p: Tripartition) -> PairMap | None:
    """An invertible element of Ker T^wedge_{BA} (as a 2x2 map B -> A), or None.

    det is a quadratic form on the kernel, so it vanishes identically iff it
    vanishes on each basis vector and on each pairwise sum; the first of those
    candidates with nonzero determinant is returned.
    """
    p.validate(t.order)
    da, db = t.shape[p.a_mode], t.shape[p.b_mode]
    if da != 2 or db != 2:
        raise UnsupportedError(f"kernel search needs dims 2 on modes {p.a_mode}, {p.b_mode}; got {da}, {db}")
    basis = kernel_basis(exterior_flattening(t, p))
    candidates = list(basis)
    candidates += [tuple(x + y for x, y in zip(u, w)) for u, w in combinations(basis, 2)]
    for v in candidates:
        if v[0] * v[3] - v[1] * v[2] != 0:
            return PairMap(_as_pair_map(v, da, db))
    return None


def symmetrize_pair(t: Tensor, phi: PairMap, p: Tripartition) -> Tensor:
    """phi(T): replace the B slot by a copy of A through ``phi``; the result is symmetric in (a, b)."""
    p.validate(t.order)
    da, db = t.shape[p.a_mode], t.shape[p.b_mode]
    m = phi.matrix
    if m.shape != (da, db):
        raise ContractError(f"phi must be {da}x{db}, got {m.rows}x{m.cols}")
    if da != db or det(m) == 0:
        raise ContractError("phi is not invertible")
    if any(exterior_flattening(t, p) @ m.entries):
        raise ContractError("phi is not in the kernel of the exterior flattening")
    out = apply_mode_map(t, ModeMap(p.b_mode, m))
    swapped = np.swapaxes(out.array, p.a_mode, p.b_mode)
    if not np.array_equal(swapped, out.array):
        raise AssertionError("kernel element failed to symmetrize the tensor")
    return out
