from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multbound.chartable import character_table, class_multiplication_coefficients, dixon_prime, power_maps
from multbound.cyclotomic import ONE, ZERO, dot
from multbound.groups import enumerate_group, inner_product, symmetric_group


def check_orthogonality(G, tbl):
    cd = G.conjugacy()
    k = len(cd)
    assert len(tbl) == k
    for i, a in enumerate(tbl):
        for j, b in enumerate(tbl):
            assert inner_product(a, b) == (ONE if i == j else ZERO)
    for s in range(k):
        for t in range(k):
            col = dot([chi[s] for chi in tbl], [chi[t].conjugate() for chi in tbl])
            want = cd.centralizer_orders[s] if s == t else 0
            assert col == want


def test_dixon_prime():
    p = dixon_prime(120, 60)
    assert p % 60 == 1 and p > 2 * 120**0.5
    assert dixon_prime(6, 6) == 7


def test_symmetric_tables():
    for n, degs in [(2, [1, 1]), (3, [1, 1, 2]), (4, [1, 1, 2, 3, 3]), (5, [1, 1, 4, 4, 5, 5, 6])]:
        G = symmetric_group(n)
        tbl = character_table(G)
        assert tbl.degrees() == degs
        assert all(v == ONE for v in tbl[0])  # trivial first
        check_orthogonality(G, tbl)


def test_cyclic_group_has_irrational_values():
    c5 = tuple((i + 1) % 5 for i in range(5))
    G = enumerate_group([c5])
    tbl = character_table(G)
    check_orthogonality(G, tbl)
    assert any(not v.is_rational() for chi in tbl for v in chi)


def test_frobenius_group_20():
    c5 = tuple((i + 1) % 5 for i in range(5))
    m2 = tuple((2 * i) % 5 for i in range(5))
    G = enumerate_group([c5, m2])
    assert G.order == 20
    tbl = character_table(G)
    assert sorted(tbl.degrees()) == [1, 1, 1, 1, 4]
    check_orthogonality(G, tbl)


def test_power_maps_and_coefficients():
    G = symmetric_group(3)
    pm = power_maps(G)
    assert all(row[0] == 0 for row in pm)
    a = class_multiplication_coefficients(G)
    # class 0 (identity) acts as the identity on the class algebra
    k = a.shape[0]
    for s in range(k):
        for t in range(k):
            assert a[0, s, t] == (1 if s == t else 0)


def test_disk_cache(tmp_path):
    G = symmetric_group(4)
    t1 = character_table(G, cache_dir=tmp_path)
    files = list(tmp_path.glob("chartable-*.json"))
    assert len(files) == 1
    H = symmetric_group(4)  # fresh object, so the in-memory memo misses
    t2 = character_table(H, cache_dir=tmp_path)
    assert [list(c) for c in t1] == [list(c) for c in t2]


@st.composite
def small_groups(draw):
    n = draw(st.integers(3, 6))
    gens = draw(st.lists(st.permutations(range(n)), min_size=1, max_size=2))
    return enumerate_group([tuple(g) for g in gens], degree=n)


@settings(max_examples=15)
@given(small_groups())
def test_random_groups_orthogonality(G):
    if G.order > 120:
        return
    tbl = character_table(G)
    check_orthogonality(G, tbl)
    assert sum(d * d for d in tbl.degrees()) == G.order
    for d in tbl.degrees():
        assert G.order % d == 0


def test_decompose():
    G = symmetric_group(4)
    tbl = character_table(G)
    from multbound.groups import permutation_character

    pi = permutation_character(G)
    coeffs = [c.as_rational() for c in tbl.decompose(pi)]
    assert sum(coeffs) == 2 and coeffs[0] == 1
    (j,) = [i for i, c in enumerate(coeffs) if i and c]
    assert tbl.degrees()[j] == 3
    rebuilt = tbl[0] + tbl[j]
    assert rebuilt == pi
