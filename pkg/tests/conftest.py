import math
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from segre_sigma3 import ExactMatrix, Tensor, det, simple_tensor

small_ints = st.integers(-4, 4)


@st.composite
def shapes(draw, min_order=2, max_order=4, max_dim=3):
    n = draw(st.integers(min_order, max_order))
    return tuple(draw(st.lists(st.integers(1, max_dim), min_size=n, max_size=n)))


@st.composite
def tensors(draw, shape=None, **kw):
    shape = shape or draw(shapes(**kw))
    size = math.prod(shape)
    entries = draw(st.lists(st.one_of(st.just(0), small_ints), min_size=size, max_size=size))
    return Tensor(entries, shape=shape)


@st.composite
def low_rank_tensors(draw, shape=None, max_terms=4, **kw):
    """Sums of a few simple tensors, so flattening ranks stay small."""
    shape = shape or draw(shapes(**kw))
    t = Tensor.zeros(shape)
    for _ in range(draw(st.integers(1, max_terms))):
        t = t + simple_tensor([draw(st.lists(small_ints, min_size=d, max_size=d)) for d in shape])
    return t


@st.composite
def invertible_matrices(draw, n):
    # unit lower triangular times upper triangular with nonzero diagonal, then a row shuffle
    nonzero = st.integers(-3, 3).filter(bool)
    lower = ExactMatrix([[1 if i == j else (draw(small_ints) if j < i else 0) for j in range(n)] for i in range(n)])
    upper = ExactMatrix([[draw(nonzero) if i == j else (draw(small_ints) if j > i else 0) for j in range(n)] for i in range(n)])
    perm = draw(st.permutations(range(n)))
    p = ExactMatrix([[int(j == perm[i]) for j in range(n)] for i in range(n)])
    return p @ lower @ upper


def random_invertible(rng: np.random.Generator, n: int) -> ExactMatrix:
    while True:
        m = ExactMatrix([[int(x) for x in rng.integers(-3, 4, size=n)] for _ in range(n)], rows=n, cols=n)
        if det(m) != 0:
            return m


def unit(i, n):
    return [Fraction(int(k == i)) for k in range(n)]
