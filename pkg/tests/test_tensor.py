import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import invertible_matrices, small_ints, tensors, unit
from segre_sigma3 import ExactMatrix, ModeMap, Tensor, add, apply_mode_map, identity, inverse, permute_modes, scale, simple_tensor
from segre_sigma3.errors import ShapeError
from segre_sigma3.tensor import inverse_permutation


def test_simple_tensor_examples():
    t = simple_tensor([unit(0, 2)] * 3)
    assert [idx for idx in itertools.product(range(2), repeat=3) if t[idx] != 0] == [(0, 0, 0)]
    assert t[0, 0, 0] == 1
    assert simple_tensor([[1, 1], [1, 1]]) == Tensor([[1, 1], [1, 1]])
    assert simple_tensor([[1, 2], [3, 4]]) == Tensor([[3, 4], [6, 8]])


def test_simple_tensor_errors():
    with pytest.raises(ShapeError):
        simple_tensor([[1, 2], []])
    with pytest.raises(ShapeError):
        simple_tensor([[1, 2]])


def test_order_one_rejected():
    with pytest.raises(ShapeError):
        Tensor([1, 2, 3])
    with pytest.raises(ShapeError):
        Tensor([1, 2, 3], shape=(2, 2))


def test_add_and_scale_examples():
    t = simple_tensor([[1, -2], [3, 0], ["1/2", 5]])
    assert t + Tensor.zeros(t.shape) == t
    assert scale(t, 0) == Tensor.zeros(t.shape)
    assert add(simple_tensor([unit(0, 2)] * 2), simple_tensor([unit(1, 2)] * 2)) == Tensor([[1, 0], [0, 1]])
    with pytest.raises(ShapeError):
        add(t, Tensor.zeros((2, 2)))


def test_apply_mode_map_examples():
    t = simple_tensor([[1, 2], [3, -1], [0, 5]])
    for mode in range(3):
        assert apply_mode_map(t, ModeMap(mode, identity(2))) == t
    swap = ExactMatrix([[0, 1], [1, 0]])
    assert apply_mode_map(simple_tensor([unit(0, 2)] * 2), ModeMap(0, swap)) == simple_tensor([unit(1, 2), unit(0, 2)])
    cube = Tensor(list(range(8)), shape=(2, 2, 2))
    sliced = apply_mode_map(cube, ModeMap(0, ExactMatrix([[1, 0]])))
    assert sliced.shape == (1, 2, 2)
    assert sliced == Tensor([[[0, 1], [2, 3]]])


def test_apply_mode_map_shape_mismatch():
    with pytest.raises(ShapeError):
        apply_mode_map(Tensor.zeros((2, 3)), ModeMap(1, identity(2)))
    with pytest.raises(ShapeError):
        apply_mode_map(Tensor.zeros((2, 3)), ModeMap(2, identity(2)))


def test_apply_mode_map_matches_hand_contraction():
    t = Tensor(list(range(12)), shape=(2, 3, 2))
    m = ExactMatrix([[1, 0, 2], [0, -1, "1/3"]])
    out = apply_mode_map(t, ModeMap(1, m))
    for i, k, j in itertools.product(range(2), range(2), range(2)):
        assert out[i, k, j] == sum(m[k, l] * t[i, l, j] for l in range(3))


def test_permute_examples():
    t = Tensor(list(range(24)), shape=(2, 3, 4))
    assert permute_modes(t, [0, 1, 2]) == t
    m = Tensor([[1, 2, 3], [4, 5, 6]])
    assert permute_modes(m, [1, 0]) == Tensor([[1, 4], [2, 5], [3, 6]])
    assert permute_modes(t, [2, 0, 1]).shape == (4, 2, 3)
    with pytest.raises(ShapeError):
        permute_modes(t, [0, 0, 1])


def test_permute_entry_rule():
    t = Tensor(list(range(24)), shape=(2, 3, 4))
    perm = (2, 0, 1)
    p = permute_modes(t, perm)
    for idx in itertools.product(*map(range, t.shape)):
        assert p[tuple(idx[k] for k in perm)] == t[idx]


def test_immutable():
    t = Tensor([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        t.array[0, 0] = Fraction(7)
    with pytest.raises(AttributeError):
        t.foo = 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mode_map_then_inverse_recovers(data):
    t = data.draw(tensors(max_order=4))
    mode = data.draw(st.integers(0, t.order - 1))
    m = data.draw(invertible_matrices(t.shape[mode]))
    assert apply_mode_map(apply_mode_map(t, ModeMap(mode, m)), ModeMap(mode, inverse(m))) == t


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_permute_round_trip(data):
    t = data.draw(tensors(max_order=5))
    perm = data.draw(st.permutations(range(t.order)))
    assert permute_modes(permute_modes(t, perm), inverse_permutation(perm)) == t
    if t.order == 2:
        assert permute_modes(permute_modes(t, [1, 0]), [1, 0]) == t


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_simple_tensor_multilinear(data):
    dims = data.draw(st.lists(st.integers(1, 3), min_size=2, max_size=4))
    vecs = [data.draw(st.lists(small_ints, min_size=d, max_size=d)) for d in dims]
    slot = data.draw(st.integers(0, len(dims) - 1))
    other = data.draw(st.lists(small_ints, min_size=dims[slot], max_size=dims[slot]))
    c = data.draw(small_ints)
    summed = list(vecs)
    summed[slot] = [x + y for x, y in zip(vecs[slot], other)]
    swapped = list(vecs)
    swapped[slot] = other
    assert simple_tensor(summed) == simple_tensor(vecs) + simple_tensor(swapped)
    scaled = list(vecs)
    scaled[slot] = [c * x for x in vecs[slot]]
    assert simple_tensor(scaled) == scale(simple_tensor(vecs), c)
