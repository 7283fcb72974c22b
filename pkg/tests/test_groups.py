import math

import pytest
from hypothesis import given, strategies as st

from multbound.cyclotomic import ONE
from multbound.groups import (
    GroupOrderError,
    centralizer,
    enumerate_group,
    inner_product,
    inv,
    mul,
    permutation_character,
    regular_character,
    symmetric_group,
    trivial_character,
)


def test_symmetric_orders():
    for n in range(1, 6):
        assert symmetric_group(n).order == math.factorial(n)


def test_class_counts():
    # partitions of n
    assert [len(symmetric_group(n).conjugacy()) for n in range(1, 6)] == [1, 2, 3, 5, 7]


def test_identity_first_and_inverse():
    G = symmetric_group(4)
    assert G.identity == (0, 1, 2, 3)
    for i in range(G.order):
        assert G.mul_index(i, G.inverse_index(i)) == 0


def test_order_cap():
    with pytest.raises(GroupOrderError):
        enumerate_group(symmetric_group(5).generators, cap=50)


def test_centralizer_orders_match_class_sizes():
    G = symmetric_group(5)
    cd = G.conjugacy()
    for r, c in zip(cd.representatives, cd.centralizer_orders):
        assert centralizer(G, r).order == c


@st.composite
def small_groups(draw):
    n = draw(st.integers(2, 5))
    gens = draw(st.lists(st.permutations(range(n)), min_size=1, max_size=2))
    return enumerate_group([tuple(g) for g in gens], degree=n)


@given(small_groups())
def test_classes_partition_group(G):
    cd = G.conjugacy()
    assert sum(cd.sizes) == G.order
    for cls in cd.classes:
        x = G.elements[cls[0]]
        for g in G.elements:
            y = mul(g, mul(x, inv(g)))
            assert G.index[y] in cls


@given(small_groups())
def test_regular_and_trivial(G):
    reg = regular_character(G)
    one = trivial_character(G)
    assert inner_product(reg, one) == ONE
    assert inner_product(one, one) == ONE
    # Burnside: <pi, 1> counts orbits
    pi = permutation_character(G)
    orbits = set()
    for i in range(G.degree):
        orbits.add(frozenset(g[i] for g in G.elements))
    assert inner_product(pi, one).as_rational() == len(orbits)
