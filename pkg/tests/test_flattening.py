import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import invertible_matrices, low_rank_tensors, tensors, unit
from segre_sigma3 import (
    Bipartition,
    ExactMatrix,
    Family,
    ModeMap,
    NormalFormSpec,
    Tensor,
    apply_mode_map,
    bipartitions,
    concise_core,
    flatten,
    flattening_rank,
    generate,
    identity,
    mode_rank,
    permute_modes,
    rank,
    simple_tensor,
)
from segre_sigma3.errors import DegenerateInputError, ShapeError


def flatten_by_loops(t: Tensor, left, right) -> ExactMatrix:
    """Independent oracle: enumerate multi-indices explicitly."""
    rows = list(itertools.product(*(range(t.shape[i]) for i in left)))
    cols = list(itertools.product(*(range(t.shape[j]) for j in right)))
    out = []
    for r in rows:
        row = []
        for c in cols:
            idx = [0] * t.order
            for mode, k in zip(left, r):
                idx[mode] = k
            for mode, k in zip(right, c):
                idx[mode] = k
            row.append(t[tuple(idx)])
        out.append(row)
    return ExactMatrix(out, rows=len(rows), cols=len(cols))


def all_bipartitions(order):
    for k in range(1, order):
        for left in itertools.combinations(range(order), k):
            yield Bipartition.from_left(left, order)


def test_bipartition_enumeration():
    assert [p.left for p in bipartitions(3)] == [(0,), (0, 1), (0, 2)]
    for n in range(2, 7):
        ps = bipartitions(n)
        assert len(ps) == 2 ** (n - 1) - 1
        assert all(0 in p.left for p in ps)
        assert [p.left for p in ps] == sorted(p.left for p in ps)


def test_invalid_bipartitions():
    t = Tensor.zeros((2, 2, 2))
    for left, right in [((0,), (1,)), ((0, 1), (1, 2)), ((), (0, 1, 2)), ((0, 1, 2), ())]:
        with pytest.raises(ShapeError):
            flatten(t, Bipartition(left, right))


def test_flatten_examples():
    s = simple_tensor([[1, 2], [3, -1], [1, 1]])
    m = flatten(s, Bipartition.from_left([0], 3))
    assert m.shape == (2, 4) and rank(m) == 1
    eye = simple_tensor([unit(0, 3)] * 2) + simple_tensor([unit(1, 3)] * 2) + simple_tensor([unit(2, 3)] * 2)
    assert flatten(eye, Bipartition.from_left([0], 2)) == identity(3)
    w = simple_tensor([unit(0, 2)] * 3) + simple_tensor([unit(1, 2)] * 3)
    m = flatten(w, Bipartition.from_left([0, 1], 3))
    assert m.shape == (4, 2)
    assert [i for i in range(4) if any(m.row(i))] == [0, 3]


def test_flattening_rank_examples():
    s = simple_tensor([[1, 2, 0], [3, -1, 1], [1, 1, 5]])
    assert all(flattening_rank(s, p) == 1 for p in all_bipartitions(3))
    t = generate(NormalFormSpec(Family.GENERIC_RANK, (3, 3, 3), 3, rank=3))
    assert flattening_rank(t, Bipartition.from_left([0], 3)) == 3
    rng = np.random.default_rng(4)
    g = Tensor([int(x) for x in rng.integers(-9, 10, size=16)], shape=(2, 2, 2, 2))
    m = flatten(g, Bipartition.from_left([0, 1], 4))
    assert flattening_rank(g, Bipartition.from_left([0, 1], 4)) == 4
    # determinant oracle on the 4x4 flattening
    assert round(np.linalg.det(np.array(m.to_lists(), dtype=float))) != 0


def test_concise_core_examples():
    s = simple_tensor([[0, 2, 1], [1, 0, -1], [3, 3, 3]])
    c = concise_core(s)
    assert c.dims == (1, 1, 1) and c.core[0, 0, 0] != 0
    assert c.reconstruct() == s
    w = simple_tensor([unit(0, 3)] * 3) + simple_tensor([unit(1, 3)] * 3)
    assert concise_core(w).dims == (2, 2, 2)
    g = Tensor([1, 2, -1, 0, 3, 1, 1, -2], shape=(2, 2, 2))
    cg = concise_core(g)
    assert cg.dims == (2, 2, 2)
    assert all(rank(e) == 2 for e in cg.embeddings)
    assert cg.reconstruct() == g


def test_concise_core_zero():
    with pytest.raises(DegenerateInputError):
        concise_core(Tensor.zeros((2, 3)))


@settings(max_examples=80, deadline=None)
@given(tensors(max_order=4))
def test_flatten_matches_loop_oracle(t):
    for p in all_bipartitions(t.order):
        assert flatten(t, p) == flatten_by_loops(t, p.left, p.right)


@settings(max_examples=80, deadline=None)
@given(tensors(max_order=4))
def test_complement_rank(t):
    for p in bipartitions(t.order):
        assert flattening_rank(t, p) == flattening_rank(t, p.complement())
        assert flatten(t, p.complement()) == flatten(t, p).T


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_rank_invariance(data):
    t = data.draw(low_rank_tensors(max_order=4))
    maps = [data.draw(invertible_matrices(d)) for d in t.shape]
    moved = t
    for mode, m in enumerate(maps):
        moved = apply_mode_map(moved, ModeMap(mode, m))
    perm = data.draw(st.permutations(range(t.order)))
    permuted = permute_modes(t, perm)
    where = {old: new for new, old in enumerate(perm)}
    for p in bipartitions(t.order):
        r = flattening_rank(t, p)
        assert flattening_rank(moved, p) == r
        assert flattening_rank(permuted, Bipartition.from_left([where[i] for i in p.left], t.order)) == r


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subadditive(data):
    shape = data.draw(st.sampled_from([(2, 2, 2), (3, 2, 2), (2, 3, 2, 2)]))
    t1 = data.draw(low_rank_tensors(shape=shape, max_terms=2))
    t2 = data.draw(low_rank_tensors(shape=shape, max_terms=2))
    for p in bipartitions(len(shape)):
        assert flattening_rank(t1 + t2, p) <= flattening_rank(t1, p) + flattening_rank(t2, p)


@settings(max_examples=80, deadline=None)
@given(low_rank_tensors(max_order=4, max_terms=3))
def test_concise_reconstruction(t):
    if t.is_zero():
        return
    c = concise_core(t)
    assert c.reconstruct() == t
    assert c.dims == tuple(mode_rank(t, i) for i in range(t.order))
    for e, d in zip(c.embeddings, c.dims):
        assert e.cols == d and rank(e) == d
    # ranks of every flattening are preserved by the reduction
    for p in bipartitions(t.order):
        assert flattening_rank(c.core, p) == flattening_rank(t, p)
    assert math.prod(c.dims) <= math.prod(t.shape)
