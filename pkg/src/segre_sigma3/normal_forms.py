"""Seeded generators for the normal forms of points of sigma_2 and sigma_3.

Vectors are indexed ``vectors[mode][slot]`` with 0-based slots, so slot ``j``
of mode ``i`` is the vector written a^{i+1}_{j+1} in the usual 1-based notation.
Coordinates are drawn uniformly from {-9, ..., 9}.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError, UnsupportedError
from .exact import as_rational, int_rank
from .flattening import array_rank
from .tensor import Tensor, simple_tensor

__all__ = [
    "Family",
    "NormalFormSpec",
    "NORMAL_FORM_FAMILIES",
    "parse_family",
    "generate",
    "assemble",
    "derivative_oracle",
]

LOW, HIGH = -9, 9


class Family(str, Enum):
    SIGMA2_POINT = "sigma2-point"
    SIGMA2_RANK_TWO = "sigma2-ranktwo"
    SIGMA2_TANGENT = "sigma2-tangent"
    SIGMA3_TYPE1 = "sigma3-type1"
    SIGMA3_TYPE2 = "sigma3-type2"
    SIGMA3_TYPE3 = "sigma3-type3"
    SIGMA3_TYPE4 = "sigma3-type4"
    CASE3_TYPE1 = "case3-type1"
    CASE3_TYPE2 = "case3-type2"
    GENERIC_RANK = "generic-rank"


# number of vector slots per mode
_SLOTS = {
    Family.SIGMA2_POINT: 1,
    Family.SIGMA2_RANK_TWO: 2,
    Family.SIGMA2_TANGENT: 2,
    Family.SIGMA3_TYPE1: 3,
    Family.SIGMA3_TYPE2: 3,
    Family.SIGMA3_TYPE3: 3,
    Family.SIGMA3_TYPE4: 3,
}

NORMAL_FORM_FAMILIES = tuple(_SLOTS) + (Family.CASE3_TYPE1, Family.CASE3_TYPE2)


@dataclass(frozen=True)
class NormalFormSpec:
    family: Family
    dims: tuple[int, ...]
    seed: int
    rank: int | None = None  # only for GENERIC_RANK

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) < 2 or any(d < 1 for d in self.dims):
            raise ShapeError(f"invalid dims {self.dims}")
        if self.family is Family.GENERIC_RANK:
            if self.rank is None or self.rank < 1:
                raise ShapeError("generic-rank needs a rank r >= 1")
        elif self.rank is not None:
            raise ShapeError(f"{self.family.value} takes no rank")
        if self.family in (Family.CASE3_TYPE1, Family.CASE3_TYPE2):
            if len(self.dims) < 3 or any(d != 2 for d in self.dims):
                raise ShapeError(f"{self.family.value} lives in Sub_(2,...,2): needs n >= 3 and all dims 2")
        if self.family is Family.SIGMA3_TYPE4 and len(self.dims) < 2:
            raise ShapeError("type 4 needs at least 2 modes")


_NAME = re.compile(r"^generic[-_]?rank[-_(]?(\d+)\)?$")


def parse_family(name: str) -> tuple[Family, int | None]:
    """Accept ``sigma3-type1``, ``Sigma3_Type1``, ``generic-rank4``, ``GenericRank(4)``..."""
    key = name.strip().lower()
    m = _NAME.match(key)
    if m:
        return Family.GENERIC_RANK, int(m.group(1))
    key = key.replace("_", "-").replace("rank-two", "ranktwo")
    key = re.sub(r"(sigma\d|case\d)-?type-?(\d)", r"\1-type\2", key)
    try:
        return Family(key), None
    except ValueError:
        names = ", ".join(f.value for f in Family if f is not Family.GENERIC_RANK)
        raise ValueError(f"unknown family {name!r}; expected one of {names}, generic-rank<r>") from None


def _draw(rng: np.random.Generator, dim: int) -> list[int]:
    return [int(x) for x in rng.integers(LOW, HIGH + 1, size=dim)]


def _independent(vectors: Sequence[Sequence[int]]) -> bool:
    return int_rank([list(v) for v in vectors]) == len(vectors)


def _draw_mode(rng: np.random.Generator, dim: int, slots: int) -> list[list[int]]:
    """Draw nonzero slot vectors, the first min(dim, slots) of them independent."""
    need = min(dim, slots)
    while True:
        vecs = [_draw(rng, dim) for _ in range(slots)]
        if any(not any(v) for v in vecs):
            continue
        if _independent(vecs[:need]):
            return vecs


def _term(vectors, choice: dict[int, int]) -> Tensor:
    return simple_tensor([vectors[i][choice.get(i, 0)] for i in range(len(vectors))])


def _total(terms: Iterable[Tensor], shape) -> Tensor:
    acc = Tensor.zeros(shape)
    for t in terms:
        acc = acc + t
    return acc


def assemble(family: Family | str, vectors: Sequence[Sequence[Sequence]]) -> Tensor:
    """Build the normal form of ``family`` from explicit ``vectors[mode][slot]``."""
    family = Family(family)
    if family not in _SLOTS:
        raise UnsupportedError(f"{family.value} is not assembled from per-mode slot vectors")
    vectors = [[[as_rational(x) for x in v] for v in mode] for mode in vectors]
    n = len(vectors)
    if n < 2:
        raise ShapeError("need at least 2 modes")
    if any(len(mode) < _SLOTS[family] for mode in vectors):
        raise ShapeError(f"{family.value} needs {_SLOTS[family]} vectors per mode")
    shape = tuple(len(mode[0]) for mode in vectors)
    modes = range(n)
    if family is Family.SIGMA2_POINT:
        terms = [_term(vectors, {})]
    elif family is Family.SIGMA2_RANK_TWO:
        terms = [_term(vectors, {}), _term(vectors, {i: 1 for i in modes})]
    elif family is Family.SIGMA2_TANGENT:
        terms = [_term(vectors, {i: 1}) for i in modes]
    elif family is Family.SIGMA3_TYPE1:
        terms = [_term(vectors, {i: s for i in modes}) for s in range(3)]
    elif family is Family.SIGMA3_TYPE2:
        terms = [_term(vectors, {i: 1}) for i in modes] + [_term(vectors, {i: 2 for i in modes})]
    elif family is Family.SIGMA3_TYPE3:
        terms = [_term(vectors, {i: 1, j: 1}) for i, j in combinations(modes, 2)]
        terms += [_term(vectors, {i: 2}) for i in modes]
    else:  # SIGMA3_TYPE4
        terms = [_term(vectors, {0: 1, s: 1}) for s in range(1, n)]
        terms += [_term(vectors, {i: 2}) for i in modes]
    return _total(terms, shape)


def _random_basis(rng: np.random.Generator) -> list[list[int]]:
    while True:
        a1, a2 = _draw(rng, 2), _draw(rng, 2)
        if a1[0] * a2[1] - a1[1] * a2[0] != 0:
            return [a1, a2]


def _random_simple_vectors(rng: np.random.Generator, dims: Sequence[int]) -> list[list[int]]:
    out = []
    for d in dims:
        v = _draw(rng, d)
        while not any(v):
            v = _draw(rng, d)
        out.append(v)
    return out


def _outer_flat(vectors: Sequence[Sequence[int]]) -> list[int]:
    arr = np.array(vectors[0], dtype=object)
    for v in vectors[1:]:
        arr = np.multiply.outer(arr, np.array(v, dtype=object))
    return [int(x) for x in arr.flat]


def _case3(spec: NormalFormSpec, rng: np.random.Generator) -> Tensor:
    # local import: the pipeline module sits above this one
    from .symmetric import symmetrization_pipeline

    n = len(spec.dims)
    rest = spec.dims[2:]
    while True:
        (a11, a12), (a21, a22) = _random_basis(rng), _random_basis(rng)
        if spec.family is Family.CASE3_TYPE1:
            # (u a11 + v a12) (x) (v a21 + u a22) = uv (a11 a21 + a12 a22) + u^2 a11 a22 + v^2 a12 a21,
            # so b_j = sum_k c_kj w_k with c_k = (uv, u^2, v^2) makes T a sum of three simple tensors
            ws = [_outer_flat(_random_simple_vectors(rng, rest)) for _ in range(3)]
            uv = [tuple(int(x) for x in rng.integers(LOW, HIGH + 1, size=2)) for _ in range(3)]
            coeffs = [(u * v, u * u, v * v) for u, v in uv]
            b = [[sum(c[j] * w[k] for c, w in zip(coeffs, ws)) for k in range(len(ws[0]))] for j in range(3)]
            pieces = [(a11, a21, b[0]), (a12, a22, b[0]), (a11, a22, b[1]), (a12, a21, b[2])]
        else:
            b = [_outer_flat(_random_simple_vectors(rng, rest)) for _ in range(3)]
            if len(b[0]) >= 3 and not _independent(b):
                continue
            pieces = [(a11, a21, b[0]), (a11, a22, b[1]), (a12, a21, b[2])]
        flat = _total((simple_tensor(list(piece)) for piece in pieces), (2, 2, len(b[0])))
        t = Tensor(flat.array.reshape(spec.dims))
        if spec.family is Family.CASE3_TYPE1:
            # stay in the generic stratum: outside sigma_2(X_2) and Type 1 against every mode
            # (with one rest mode the {0,1} flattening has rank <= 2 regardless)
            if array_rank(t.array, (0, 1), tuple(range(2, n))) != min(3, math.prod(rest)):
                continue
            if not symmetrization_pipeline(t, 0).ok:
                continue
        return t


def generate(spec: NormalFormSpec, coincide: Iterable[tuple[int, int]] = ()) -> Tensor:
    """Deterministic tensor of ``spec.family`` drawn from ``spec.seed``.

    ``coincide`` holds (slot, source) pairs: after drawing, slot ``slot`` is set
    equal to slot ``source`` in every mode, to reach degenerate strata.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.family in (Family.CASE3_TYPE1, Family.CASE3_TYPE2):
        if coincide:
            raise UnsupportedError("coincidences apply to slot-vector families only")
        return _case3(spec, rng)
    if spec.family is Family.GENERIC_RANK:
        r = spec.rank
        size = math.prod(spec.dims)
        while True:
            factors = [_random_simple_vectors(rng, spec.dims) for _ in range(r)]
            terms = [simple_tensor(f) for f in factors]
            if r <= size and not _independent([list(t.array.flat) for t in terms]):
                continue
            return _total(terms, spec.dims)
    slots = _SLOTS[spec.family]
    vectors = [_draw_mode(rng, d, slots) for d in spec.dims]
    for slot, source in coincide:
        if not (0 <= slot < slots and 0 <= source < slots):
            raise ShapeError(f"slot pair {(slot, source)} out of range for {slots} slots")
        for mode in vectors:
            mode[slot] = list(mode[source])
    return assemble(spec.family, vectors)


def derivative_oracle(curve_vectors: Sequence[Sequence[Sequence]], order: int, taylor: bool = True) -> Tensor:
    """Derivative at t = 0 of the product curve x(t) = x_0(t) (x) ... (x) x_{n-1}(t).

    ``curve_vectors[i]`` lists the coefficients (c0, c1, c2) of the vector
    polynomial x_i(t) = c0 + t c1 + t^2 c2; missing trailing ones are zero.
    With ``taylor`` (default) the result is divided by ``order!``, i.e. it is
    the t^order coefficient, which is the normalization the Type 3 normal
    form uses.  Expansion is the general Leibniz rule over compositions.
    """
    if order not in (1, 2):
        raise UnsupportedError(f"derivative order {order} not supported (use 1 or 2)")
    curves = [[[as_rational(x) for x in c] for c in cv] for cv in curve_vectors]
    if len(curves) < 2 or any(not cv or len(cv) > 3 for cv in curves):
        raise ShapeError("need >= 2 curves, each with 1 to 3 coefficient vectors")
    shape = tuple(len(cv[0]) for cv in curves)
    zero = [[as_rational(0)] * d for d in shape]

    def coeff(i, k):
        return curves[i][k] if k < len(curves[i]) else zero[i]

    n = len(curves)
    acc = Tensor.zeros(shape)
    # compositions of `order` into n nonnegative parts
    for cut in combinations(range(order + n - 1), n - 1):
        parts, prev = [], -1
        for c in cut + (order + n - 1,):
            parts.append(c - prev - 1)
            prev = c
        acc = acc + simple_tensor([coeff(i, k) for i, k in enumerate(parts)])
    return acc if taylor else acc * math.factorial(order)
