from collections import Counter

import pytest

from multbound.cyclotomic import ONE, ZERO, root_of_unity
from multbound.gl2 import (
    GF,
    build_instance,
    dl_character,
    make_space,
    multiplicities,
    perm_character,
    torus_characters,
    verify_dl_bound,
    verify_theorem_a,
    weyl_twist_count,
)
from multbound.groups import inner_product, trivial_character


def classical_degrees(q):
    return Counter({1: q - 1, q: q - 1, q + 1: (q - 1) * (q - 2) // 2, q - 1: q * (q - 1) // 2})


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = GF(q)
    for a in range(q):
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        if a:
            assert any(F.mul(a, b) == 1 for b in range(1, q))
    # generator has multiplicative order q - 1
    x, k = F.generator, 1
    while x != 1:
        x = F.mul(x, F.generator)
        k += 1
    assert k == q - 1


def test_unsupported_q():
    with pytest.raises(ValueError):
        build_instance(6)
    with pytest.raises(ValueError):
        build_instance(11)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_instance_shape(q):
    inst = build_instance(q)
    assert inst.order == (q * q - 1) * (q * q - q)
    assert len(inst.split_torus) == (q - 1) ** 2
    assert len(inst.nonsplit_torus) == q * q - 1
    assert len(inst.borel) == q * (q - 1) ** 2
    assert len(inst.group.conjugacy()) == q * q - 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_table_degrees(q):
    inst = build_instance(q)
    degs = Counter(inst.table().degrees())
    assert degs == classical_degrees(q) if q > 2 else degs == Counter({1: 2, 2: 1})


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("label", ["flag", "split-torus", "torus-normalizer"])
def test_spaces_are_transitive_actions(q, label):
    inst = build_instance(q)
    sp = make_space(inst, label)
    assert sp.size * len(sp.subgroup) == inst.order
    # well defined: elements of one coset act identically on the base point
    G = inst.group
    for g in range(0, inst.order, max(1, inst.order // 40)):
        imgs = {sp.coset_of[G.mul_index(g, G.mul_index(sp.cosets[0], h))] for h in sp.subgroup}
        assert len(imgs) == 1
    pi = perm_character(inst, sp)
    assert inner_product(pi, trivial_character(G)) == ONE
    assert pi[0].as_rational() == sp.size


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_flag_is_one_plus_steinberg(q):
    inst = build_instance(q)
    m = multiplicities(inst, make_space(inst, "flag"))
    degs = inst.table().degrees()
    assert sorted(d for d, k in zip(degs, m) if k) == [1, q]
    assert max(m) == 1 and m[0] == 1
    assert multiplicities(inst, make_space(inst, "split-torus"))[0] == 1


@pytest.mark.parametrize("q", [3, 5, 7])
def test_split_torus_multiplicities_at_most_two(q):
    inst = build_instance(q)
    assert max(multiplicities(inst, make_space(inst, "split-torus"))) <= 2


def test_point_and_empty_spaces():
    inst = build_instance(3)
    assert multiplicities(inst, make_space(inst, "point"))[0] == 1
    assert all(v == ZERO for v in perm_character(inst, make_space(inst, "empty")))
    with pytest.raises(ValueError):
        make_space(inst, "grassmannian")


def test_dl_examples():
    inst = build_instance(3)
    R1 = dl_character(inst, "split", 0)
    pi = perm_character(inst, make_space(inst, "flag"))
    assert R1 == pi  # Ind_B^G 1 = 1 + St
    assert inner_product(R1, R1) == 2
    Rw = dl_character(inst, "nonsplit", 0)
    assert inner_product(Rw, trivial_character(inst.group)) == ONE
    assert Rw[0].as_rational() == 1 - 3
    # general position theta: -R is irreducible of degree q - 1
    R = dl_character(inst, "nonsplit", 1)
    assert inner_product(R, R) == ONE
    assert any(-R == chi for chi in inst.table())
    with pytest.raises(ValueError):
        dl_character(inst, "split", 99)


def _brute_twists(inst, t1, th1, t2, th2):
    """#{n in N(T) / T : theta1(n^-1 t n) = theta2(t)} by explicit conjugation."""
    if t1 != t2:
        return 0
    q = inst.q
    G = inst.group
    T = inst.split_torus if t1 == "split" else inst.nonsplit_torus
    Tset = set(T)
    if t1 == "split":
        se = inst.scalar_exponent

        def theta(th, i):
            m, n = divmod(th, q - 1)
            a, _, _, d = inst.matrices[i]
            return root_of_unity(q - 1, m * se[a] // (q + 1)) * root_of_unity(q - 1, n * se[d] // (q + 1))
    else:
        pos = {e: k for k, e in enumerate(T)}

        def theta(th, i):
            return root_of_unity(q * q - 1, th * pos[i])

    normalizer = []
    for g in range(G.order):
        gi = G.inverse_index(g)
        if all(G.mul_index(G.mul_index(gi, t), g) in Tset for t in T):
            normalizer.append(g)
    reps, seen = [], set()
    for g in normalizer:
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mul_index(g, t) for t in T}
    count = 0
    for n in reps:
        ni = G.inverse_index(n)
        if all(theta(th1, G.mul_index(G.mul_index(ni, t), n)) == theta(th2, t) for t in T):
            count += 1
    return count


def test_twist_count_matches_brute_force():
    inst = build_instance(3)
    for torus in ("split", "nonsplit"):
        n = torus_characters(inst, torus)
        for a in range(n):
            for b in range(n):
                assert weyl_twist_count(3, torus, a, torus, b) == _brute_twists(inst, torus, a, torus, b)


@pytest.mark.parametrize("q", [2, 3])
def test_dl_orthogonality(q):
    inst = build_instance(q)
    chars = {}
    for torus in ("split", "nonsplit"):
        for th in range(torus_characters(inst, torus)):
            chars[torus, th] = dl_character(inst, torus, th)
    for (t1, a), R1 in chars.items():
        for (t2, b), R2 in chars.items():
            assert inner_product(R1, R2) == weyl_twist_count(q, t1, a, t2, b)


def test_verify_dl_bound_reports():
    inst = build_instance(3)
    flag = make_space(inst, "flag")
    ok = verify_dl_bound(inst, flag, 2)
    assert ok.passed and ok.max_attained == 2 and ok.witness[:2] == ("split", 0)
    bad = verify_dl_bound(inst, flag, 1)
    assert not bad.passed and bad.witness[2] == 2


def test_theorem_a_report():
    r = verify_theorem_a("flag", [2, 3, 5], 2)
    assert r.passed and r.passed_strict and r.constant_in_q and r.max_multiplicity == 1
    r = verify_theorem_a("flag", [2, 3], 1)
    assert r.passed and not r.passed_strict


def test_unipotent_characters_are_one_and_steinberg():
    # constituents of R_T(1) over both tori
    inst = build_instance(5)
    tbl = inst.table()
    unip = set()
    for torus in ("split", "nonsplit"):
        R = dl_character(inst, torus, 0)
        unip |= {i for i, c in enumerate(tbl.decompose(R)) if not c.is_zero()}
    assert sorted(tbl.degrees()[i] for i in unip) == [1, 5]
