"""Symmetric tensors, catalecticants and the binary-form reduction.

A symmetric tensor of degree d on V is kept as its full dense order-d array;
the coefficient of the monomial with exponent multiset alpha in the form is
``multinomial(alpha) * entry(alpha)``.  Catalecticant matrices use the bare
entries, which differ from the weighted polarization by invertible diagonal
scalings only, so ranks agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .certificate import Certificate, TraceEntry
from .errors import ContractError, ShapeError, UnsupportedError
from .exact import ExactMatrix, as_rational, rank
from .flattening import concise_core
from .strassen import PairMap, Tripartition, kernel_full_rank_element, symmetrize_pair
from .tensor import Tensor

__all__ = [
    "SymTensor",
    "PipelineResult",
    "catalecticant",
    "binary_sigma3",
    "symmetrization_pipeline",
]


def _is_symmetric(arr: np.ndarray) -> bool:
    if len(set(arr.shape)) > 1:
        return False
    # adjacent transpositions generate the symmetric group
    return all(np.array_equal(arr, np.swapaxes(arr, i, i + 1)) for i in range(arr.ndim - 1))


class SymTensor:
    """Element of S^d V stored as a dense slot-symmetric order-d array."""

    __slots__ = ("_array",)

    def __init__(self, data):
        if isinstance(data, Tensor):
            arr = data.array
        else:
            raw = np.array(data, dtype=object)
            arr = np.empty(raw.shape, dtype=object)
            arr.flat[:] = [as_rational(x) for x in raw.flat]
        if arr.ndim < 1 or 0 in arr.shape:
            raise ShapeError("a symmetric tensor needs degree >= 1 and dim >= 1")
        if not _is_symmetric(arr):
            raise ContractError("entries are not invariant under slot permutations")
        arr = np.array(arr, dtype=object)
        arr.flags.writeable = False
        object.__setattr__(self, "_array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def power(cls, vector: Sequence, degree: int) -> "SymTensor":
        """The d-th tensor power v (x) ... (x) v."""
        v = np.array([as_rational(x) for x in vector], dtype=object)
        arr = v
        for _ in range(degree - 1):
            arr = np.multiply.outer(arr, v)
        return cls(arr)

    @classmethod
    def from_binary_coefficients(cls, coeffs: Sequence) -> "SymTensor":
        """Binary form sum_k coeffs[k] x^(d-k) y^k as a symmetric tensor."""
        coeffs = [as_rational(c) for c in coeffs]
        d = len(coeffs) - 1
        if d < 1:
            raise ShapeError("a binary form needs degree >= 1")
        arr = np.empty((2,) * d, dtype=object)
        for idx in np.ndindex(*arr.shape):
            k = sum(idx)
            arr[idx] = coeffs[k] / math.comb(d, k)
        return cls(arr)

    @property
    def degree(self) -> int:
        return self._array.ndim

    @property
    def dim(self) -> int:
        return self._array.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._array

    def entry(self, multiset: Sequence[int]) -> Fraction:
        return self._array[tuple(sorted(multiset))]

    def to_tensor(self) -> Tensor:
        return Tensor(self._array)

    def binary_coefficients(self) -> list[Fraction]:
        if self.dim != 2:
            raise UnsupportedError("coefficients are only listed for binary forms")
        d = self.degree
        return [math.comb(d, k) * self.entry([0] * (d - k) + [1] * k) for k in range(d + 1)]

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if self._array.shape != other._array.shape:
            raise ShapeError("degree or dimension mismatch")
        return SymTensor(self._array + other._array)

    def __eq__(self, other):
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self._array.shape == other._array.shape and np.array_equal(self._array, other._array)

    def __hash__(self):
        return hash((self._array.shape, tuple(self._array.flat)))

    def __repr__(self):
        return f"SymTensor(degree={self.degree}, dim={self.dim})"


def _monomials(dim: int, degree: int) -> list[tuple[int, ...]]:
    # non-decreasing index tuples, in lexicographic order
    return list(combinations_with_replacement(range(dim), degree))


def catalecticant(f: SymTensor, a: int) -> ExactMatrix:
    """Matrix of the (a, d-a) polarization S^a V* -> S^{d-a} V.

    Rows are degree d-a monomials and columns degree a monomials, both in
    lexicographic order; entry (alpha, beta) is f at the multiset alpha + beta.
    """
    d = f.degree
    if not 0 < a < d:
        raise ContractError(f"catalecticant index a={a} must satisfy 0 < a < {d}")
    rows = _monomials(f.dim, d - a)
    cols = _monomials(f.dim, a)
    arr = f.array
    return ExactMatrix(
        [[arr[tuple(sorted(r + c))] for c in cols] for r in rows], rows=len(rows), cols=len(cols)
    )


def binary_sigma3(f: SymTensor) -> Certificate:
    """Membership of a binary form in the third secant variety of the rational normal curve.

    For d <= 5 the secant variety is the whole space.  For d >= 6 membership
    is equivalent to rank(catalecticant(f, d // 2)) <= 3.
    """
    if f.dim != 2:
        raise UnsupportedError(f"binary_sigma3 needs a binary form, got dim {f.dim}")
    d = f.degree
    if d < 2:
        return Certificate.from_trace(())
    a = d // 2
    entry = TraceEntry("catalecticant", {"degree": d, "a": a}, rank(catalecticant(f, a)), 3)
    return Certificate.from_trace((entry,))


@dataclass(frozen=True)
class PipelineResult:
    """Outcome of the iterated symmetrization around ``pivot``.

    ``steps`` records, in order, each processed mode with the kernel element
    used for it.  On failure ``failed_mode`` names the first mode whose
    kernel holds no invertible element and ``form`` is None.
    """

    pivot: int
    form: SymTensor | None
    steps: tuple[tuple[int, PairMap], ...] = field(default_factory=tuple)
    failed_mode: int | None = None

    @property
    def ok(self) -> bool:
        return self.form is not None


def symmetrization_pipeline(t: Tensor, pivot: int) -> PipelineResult:
    """Fold every mode onto the pivot space through invertible kernel elements.

    All modes must be 2-dimensional, either as given or after concise reduction.
    """
    if not 0 <= pivot < t.order:
        raise ShapeError(f"pivot {pivot} out of range for order {t.order}")
    if any(d != 2 for d in t.shape):
        core = concise_core(t).core if not t.is_zero() else t
        if any(d != 2 for d in core.shape):
            raise UnsupportedError(f"the pipeline needs concise dims all equal to 2, got {core.shape}")
        t = core
    current = t
    steps = []
    for j in range(t.order):
        if j == pivot:
            continue
        p = Tripartition.for_pair(pivot, j, t.order)
        phi = kernel_full_rank_element(current, p)
        if phi is None:
            return PipelineResult(pivot, None, tuple(steps), j)
        current = symmetrize_pair(current, phi, p)
        steps.append((j, phi))
    return PipelineResult(pivot, SymTensor(current), tuple(steps))
