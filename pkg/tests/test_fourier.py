import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from multbound.chartable import character_table
from multbound.cyclotomic import ONE, ZERO
from multbound.fourier import (
    CURATED_TYPES,
    FamilyDataUnavailable,
    c_phi_set,
    families_of_type,
    fourier_matrix,
    gamma_group,
    m_set,
    pairing,
    pairing_matrix,
    positive_row,
)
from multbound.groups import centralizer
from multbound.symbols import bipartition_label, is_special, symbol_families, symbols_b, symbols_d

HALF = Fraction(1, 2)
PAPER_S2 = [[HALF, HALF, HALF, HALF], [HALF, HALF, -HALF, -HALF], [HALF, -HALF, HALF, -HALF], [HALF, -HALF, -HALF, HALF]]


def test_m_set_sizes():
    assert [len(m_set(g)) for g in ["trivial", "S2", "S3", "S4", "S5"]] == [1, 4, 8, 21, 39]


@pytest.mark.parametrize("gamma", ["trivial", "S2", "S3", "S4", "S5", "S2^2"])
def test_m_set_size_independent_count(gamma):
    # sum over classes of the number of classes of the centralizer
    G = gamma_group(gamma)
    total = sum(len(centralizer(G, r).conjugacy()) for r in G.conjugacy().representatives)
    assert len(m_set(gamma)) == total


def test_s2_matrix():
    assert fourier_matrix("S2").as_fractions() == PAPER_S2


def test_trivial_matrix():
    assert fourier_matrix("trivial").as_fractions() == [[1]]
    assert pairing("trivial", m_set("trivial")[0], m_set("trivial")[0]) == ONE


@pytest.mark.parametrize("gamma", ["trivial", "S2", "S2^2", "S2^3", "S3", "S4", "S5"])
def test_matrix_algebra(gamma):
    F = fourier_matrix(gamma)
    assert F.is_real()
    assert F.is_symmetric()
    assert F.is_involution()


def test_s2_power_is_kronecker():
    A = fourier_matrix("S2").as_fractions()
    B = fourier_matrix("S2^2").as_fractions()
    for i in range(16):
        for j in range(16):
            assert B[i][j] == A[i // 4][j // 4] * A[i % 4][j % 4]


def test_s2_power_matches_group_pairing():
    # the Kronecker power is the pairing matrix of the group S2 x S2 up to relabeling
    B = fourier_matrix("S2^2")
    P = pairing_matrix("S2^2")
    row_multiset = sorted(sorted(v.as_rational() for v in row) for row in P)
    assert row_multiset == sorted(sorted(B.as_fractions()[i]) for i in range(16))


def test_pairing_is_hermitian_s4():
    ms = m_set("S4")
    for a in ms[:6]:
        for b in ms:
            assert pairing("S4", a, b) == pairing("S4", b, a).conjugate()


def test_pairing_matches_matrix():
    ms = m_set("S3")
    P = pairing_matrix("S3")
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            assert pairing("S3", a, b) == P[i][j]


@pytest.mark.parametrize("gamma", ["S3", "S4", "S5"])
def test_first_row_positive(gamma):
    F = fourier_matrix(gamma)
    G = gamma_group(gamma)
    row = F.as_fractions()[0]
    assert all(v > 0 for v in row)
    # {(1,1),(y,tau)} = tau(1) / |C(y)|
    ms = m_set(gamma)
    for v, m in zip(row, ms):
        C = centralizer(G, m.x)
        deg = character_table(C).degrees()[m.sigma]
        assert v == Fraction(deg, C.order)


def test_unsupported_gamma():
    with pytest.raises(ValueError):
        fourier_matrix("S6")
    with pytest.raises(ValueError):
        fourier_matrix("A4")


# -- families -------------------------------------------------------------------


def test_type_a_singletons():
    for n in range(1, 6):
        fams = families_of_type(f"A{n}")
        assert all(f.size == 1 and f.gamma == "trivial" for f in fams)
        assert all(f.members[0].principal for f in fams)
    assert len(families_of_type("A4")) == 7  # partitions of 5


def test_twisted_a_reuses_split_data():
    a = [f.to_json()["members"] for f in families_of_type("A3")]
    b = [f.to_json()["members"] for f in families_of_type("2A3")]
    assert a == b


def test_b2_families():
    fams = families_of_type("B2")
    big = [f for f in fams if f.size > 1]
    assert len(big) == 1 and big[0].size == 4 and big[0].gamma == "S2"
    assert sum(f.size for f in fams) == 6
    assert sum(m.principal for f in fams for m in f.members) == 5  # |irr W(B2)|


def test_g2_families():
    fams = families_of_type("G2")
    big = [f for f in fams if f.size > 1]
    assert len(big) == 1 and big[0].size == 8 and big[0].gamma == "S3"
    assert sum(f.size for f in fams) == 10
    assert sum(m.principal for f in fams for m in f.members) == 6


@pytest.mark.parametrize("name,count,irrw,big", [("B3", 12, 10, [4, 4]), ("C3", 12, 10, [4, 4]), ("D4", 14, 13, [4])])
def test_classical_families(name, count, irrw, big):
    fams = families_of_type(name)
    assert sum(f.size for f in fams) == count
    assert sum(m.principal for f in fams for m in f.members) == irrw
    assert sorted(f.size for f in fams if f.size > 1) == big


@pytest.mark.parametrize("name", ["3D4", "2D4", "2E6", "F4", "E6", "2B2", "2G2", "2F4", "A6", "A1xA1"])
def test_family_data_unavailable(name):
    with pytest.raises(FamilyDataUnavailable):
        families_of_type(name)


def test_data_matches_symbols():
    """The shipped table agrees with a fresh symbol computation."""
    data = json.loads(resources.files("multbound").joinpath("data/families.json").read_text())["types"]
    for key, syms, d in [("B2", symbols_b(2), 1), ("B3", symbols_b(3), 1), ("D4", symbols_d(4), 0)]:
        fams = symbol_families(syms)
        shipped = data[key]["families"]
        assert sorted(len(f) for f in fams) == sorted(len(f["members"]) for f in shipped)
        expected = sorted(
            sorted(bipartition_label(syms[i]) + syms[i].mark if syms[i].defect == d else str(syms[i]) for i in f)
            for f in fams
        )
        got = sorted(sorted(m["label"] for m in f["members"]) for f in shipped)
        assert expected == got
        for f in shipped:
            special = f["members"][f["special"]]
            assert special["principal"] and special["m"] == "(1,0)"


def test_symbol_counts():
    # numbers of unipotent characters
    assert [len(symbols_b(n)) for n in (2, 3, 4)] == [6, 12, 25]
    assert [len(symbols_d(n)) for n in (4, 5)] == [14, 20]
    # exactly one special symbol per family
    for syms, d in [(symbols_b(2), 1), (symbols_b(3), 1), (symbols_b(4), 1), (symbols_d(4), 0), (symbols_d(5), 0)]:
        for f in symbol_families(syms):
            assert sum(1 for i in f if is_special(syms[i]) and syms[i].defect == d) == 1


def test_symbol_ranks():
    for n in (2, 3, 4):
        assert all(s.rank() == n for s in symbols_b(n))
        assert all(s.defect % 2 == 1 for s in symbols_b(n))
    assert all(s.defect % 4 == 0 for s in symbols_d(4))


# -- positive rows and C_Phi ----------------------------------------------------


@pytest.mark.parametrize("name", CURATED_TYPES + ("2A4",))
def test_positive_rows(name):
    for fam in families_of_type(name):
        for member in range(fam.size):
            phi, row = positive_row(fam, member)
            assert phi is not None
            assert all(0 < g <= 1 for g in row)
            assert row[member] >= min(c_phi_set(name))
            if fam.gamma == "S2":
                assert row == [HALF] * 4
            if fam.size == 1:
                assert row == [1]


def test_min_over_s2_blocks_is_half():
    rows = []
    for name in CURATED_TYPES:
        for fam in families_of_type(name):
            if fam.gamma.startswith("S2"):
                rows.extend(positive_row(fam, 0)[1])
    assert rows and min(rows) == HALF


def test_g2_row():
    fam = [f for f in families_of_type("G2") if f.size == 8][0]
    _, row = positive_row(fam, 3)
    assert sorted(row) == sorted(Fraction(x) for x in ["1/6", "1/6", "1/3", "1/2", "1/2", "1/3", "1/3", "1/3"])


def test_c_phi_examples():
    assert c_phi_set("A3") == {1}
    assert c_phi_set("B2") == {1, HALF}
    assert c_phi_set("A1xB2") == {1, HALF}
    assert c_phi_set("0") == {1}
    assert c_phi_set("G2") == {1, HALF, Fraction(1, 3), Fraction(1, 6)}


PAIRS = ["A1", "A2", "B2", "G2", "B3", "D4"]


@given(st.sampled_from(PAIRS), st.sampled_from(PAIRS))
def test_product_rule(a, b):
    got = c_phi_set(f"{a}x{b}")
    want = {x * y for x in c_phi_set(a) for y in c_phi_set(b)}
    assert got == want
