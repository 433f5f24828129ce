import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setfourier.config import use_limits
from setfourier.errors import SizeError, ValidationError
from setfourier.group import add, character, make_group, neg, sub

from . import oracles

orders_st = st.lists(st.integers(1, 6), min_size=1, max_size=3)


def test_make_group_sizes():
    assert make_group([2, 2, 2]).N == 8
    G = make_group([1, 5, 1])
    assert G.orders == (5,) and G.N == 5


def test_make_group_size_error():
    with pytest.raises(SizeError):
        make_group([1024, 1024, 2])


def test_make_group_respects_limit_override():
    with use_limits(max_n=16):
        with pytest.raises(SizeError):
            make_group([32])
    assert make_group([32]).N == 32


@pytest.mark.parametrize("bad", [[0], [-3, 2], []])
def test_make_group_rejects_bad_orders(bad):
    if bad == []:
        assert make_group(bad).N == 1
    else:
        with pytest.raises(ValidationError):
            make_group(bad)


def test_addition_examples():
    Z5 = make_group([5])
    assert add(Z5.element(3), Z5.element(4)) == Z5.element(2)
    F4 = make_group([2, 2])
    assert add(F4.element([1, 0]), F4.element([1, 1])).coords == (0, 1)
    for i in range(5):
        assert add(Z5.element(i), Z5.zero) == Z5.element(i)


def test_negation_examples():
    Z5 = make_group([5])
    assert neg(Z5.element(2)) == Z5.element(3)
    F = make_group([2] * 4)
    for i in range(F.N):
        assert neg(F.element(i)) == F.element(i)
    assert neg(F.zero) == F.zero


def test_character_examples():
    F4 = make_group([2, 2])
    assert character(F4.dual([1, 0]), F4.element([1, 1])) == pytest.approx(-1)
    Z4 = make_group([4])
    assert character(Z4.dual(1), Z4.element(1)) == pytest.approx(1j)
    G = make_group([3, 4])
    for i in range(G.N):
        assert character(G.dual(0), G.element(i)) == pytest.approx(1)


def test_index_matches_c_order():
    orders = (3, 2, 4)
    G = make_group(orders)
    for i, coords in enumerate(oracles.elements(orders)):
        assert tuple(G.coords(i)) == coords
        assert int(G.index(np.array(coords))) == i


@given(orders_st, st.data())
@settings(max_examples=60, deadline=None)
def test_group_axioms(orders, data):
    G = make_group(orders)
    idx = st.integers(0, G.N - 1)
    g, h, k = (G.element(data.draw(idx)) for _ in range(3))
    assert add(add(g, h), k) == add(g, add(h, k))
    assert add(g, h) == add(h, g)
    assert add(g, neg(g)) == G.zero
    assert sub(g, h) == add(g, neg(h))


@given(orders_st, st.data())
@settings(max_examples=60, deadline=None)
def test_character_multiplicative_and_symmetric(orders, data):
    G = make_group(orders)
    idx = st.integers(0, G.N - 1)
    xi, g, h = data.draw(idx), data.draw(idx), data.draw(idx)
    c = lambda a, b: character(G.dual(a), G.element(b))
    assert c(xi, add(G.element(g), G.element(h)).index) == pytest.approx(c(xi, g) * c(xi, h))
    assert c(xi, g) == pytest.approx(c(g, xi))
    assert abs(c(xi, g)) == pytest.approx(1)
    canon = G.orders
    expected = oracles.chi(canon, tuple(G.coords(xi)), tuple(G.coords(g)))
    assert cmath.isclose(c(xi, g), expected, abs_tol=1e-12)


def test_character_orthogonality():
    G = make_group([3, 4])
    table = np.array([[character(G.dual(a), G.element(b)) for b in range(G.N)] for a in range(G.N)])
    assert np.allclose(table @ table.conj().T, G.N * np.eye(G.N))
