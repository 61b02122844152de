"""Dense tensors over the rationals.

Entries live in a read-only numpy object array of :class:`fractions.Fraction`.
Multi-indices are 0-based and flat storage is lexicographic with the last
index varying fastest (numpy C order).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError
from .exact import ExactMatrix, as_rational

__all__ = [
    "Tensor",
    "ModeMap",
    "simple_tensor",
    "add",
    "scale",
    "apply_mode_map",
    "permute_modes",
]

_ZERO = Fraction(0)


def _check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(d) for d in shape)
    if len(shape) < 2:
        raise ShapeError(f"tensors need at least 2 modes, got shape {shape}")
    if any(d < 1 for d in shape):
        raise ShapeError(f"every dimension must be >= 1, got shape {shape}")
    return shape


class Tensor:
    """Immutable element of A_0 (x) ... (x) A_{n-1} with rational entries."""

    __slots__ = ("_array",)

    def __init__(self, data, shape: Sequence[int] | None = None):
        if isinstance(data, Tensor):
            arr = data._array
        elif isinstance(data, np.ndarray) and data.dtype == object and shape is None:
            arr = np.empty(data.shape, dtype=object)
            arr.flat[:] = [as_rational(x) for x in data.flat]
        else:
            if shape is None:
                raw = np.array(data, dtype=object)
                shape = raw.shape
                flat = list(raw.flat)
            else:
                flat = list(np.asarray(data, dtype=object).flat)
            shape = _check_shape(shape)
            if len(flat) != math.prod(shape):
                raise ShapeError(f"{len(flat)} entries do not fill shape {shape}")
            arr = np.empty(shape, dtype=object)
            arr.flat[:] = [as_rational(x) for x in flat]
        _check_shape(arr.shape)
        arr.flags.writeable = False
        object.__setattr__(self, "_array", arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Tensor":
        # trusted constructor: arr is an object array of Fractions we own
        t = object.__new__(cls)
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(t, "_array", arr)
        return t

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> "Tensor":
        shape = _check_shape(shape)
        arr = np.empty(shape, dtype=object)
        arr.fill(_ZERO)
        return cls._wrap(arr)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor is immutable")

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def order(self) -> int:
        return self._array.ndim

    @property
    def array(self) -> np.ndarray:
        """Read-only object array view of the entries."""
        return self._array

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(self._array.flat)

    def __getitem__(self, index):
        return self._array[index]

    def is_zero(self) -> bool:
        return not any(self._array.flat)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._array.flat)

    def __add__(self, other: "Tensor") -> "Tensor":
        return add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return add(self, scale(other, -1))

    def __neg__(self) -> "Tensor":
        return scale(self, -1)

    def __mul__(self, c) -> "Tensor":
        return scale(self, c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"Tensor(shape={self.shape}, entries=[{', '.join(str(x) for x in self._array.flat)}])"


@dataclass(frozen=True)
class ModeMap:
    """Linear map applied to one mode; ``matrix`` sends old coordinates to new."""

    mode: int
    matrix: ExactMatrix


def simple_tensor(vectors: Sequence[Sequence]) -> Tensor:
    """Outer product v_0 (x) v_1 (x) ... (x) v_{n-1}."""
    if len(vectors) < 2:
        raise ShapeError("a simple tensor needs at least 2 factors")
    vecs = [[as_rational(x) for x in v] for v in vectors]
    if any(len(v) == 0 for v in vecs):
        raise ShapeError("empty factor vector")
    arr = np.array(vecs[0], dtype=object)
    for v in vecs[1:]:
        arr = np.multiply.outer(arr, np.array(v, dtype=object))
    return Tensor._wrap(arr)


def add(t1: Tensor, t2: Tensor) -> Tensor:
    if t1.shape != t2.shape:
        raise ShapeError(f"cannot add tensors of shapes {t1.shape} and {t2.shape}")
    return Tensor._wrap(t1.array + t2.array)


def scale(t: Tensor, c) -> Tensor:
    c = as_rational(c)
    return Tensor._wrap(t.array * c)


def apply_mode_map(t: Tensor, m: ModeMap) -> Tensor:
    """Contract ``m.matrix`` against mode ``m.mode``; that mode's dim becomes ``matrix.rows``."""
    if not 0 <= m.mode < t.order:
        raise ShapeError(f"mode {m.mode} out of range for order {t.order}")
    if m.matrix.cols != t.shape[m.mode]:
        raise ShapeError(
            f"matrix with {m.matrix.cols} columns cannot act on mode {m.mode} of dim {t.shape[m.mode]}"
        )
    mat = np.array(m.matrix.to_lists(), dtype=object).reshape(m.matrix.rows, m.matrix.cols)
    out = np.tensordot(mat, t.array, axes=([1], [m.mode]))
    out = np.moveaxis(out, 0, m.mode)
    if out.size == 0:
        raise ShapeError("mode map produced an empty mode")
    return Tensor._wrap(out)


def apply_mode_maps(t: Tensor, maps: Iterable[ModeMap]) -> Tensor:
    for m in maps:
        t = apply_mode_map(t, m)
    return t


def permute_modes(t: Tensor, perm: Sequence[int]) -> Tensor:
    """Reorder modes: mode ``k`` of the result is mode ``perm[k]`` of ``t``."""
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(t.order)):
        raise ShapeError(f"{perm} is not a permutation of {t.order} modes")
    return Tensor._wrap(np.transpose(t.array, perm))


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p] = k
    return tuple(inv)
