"""Lusztig's set M(Gamma), the non-abelian Fourier pairing and family data.

M(Gamma) consists of pairs (x, sigma) with x a class representative of
Gamma and sigma an irreducible character of C_Gamma(x).  The pairing

    {(x, s), (y, t)} = 1/(|C(x)| |C(y)|) sum_{g : x commutes with g y g^-1}
                       s(g y g^-1) * conj(t(g^-1 x g))

gives the Fourier matrix of a family of unipotent characters.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .chartable import character_table
from .cyclotomic import Cyclotomic, ONE, ZERO, dot
from .groups import FiniteGroup, centralizer, enumerate_group, inv, mul, symmetric_group
from .roots import CartanType, UnsupportedTypeError, parse_type

__all__ = [
    "MSetElement",
    "FourierMatrix",
    "FamilyMember",
    "FamilyRecord",
    "FamilyDataUnavailable",
    "DataIntegrityError",
    "gamma_group",
    "m_set",
    "pairing",
    "pairing_matrix",
    "fourier_matrix",
    "families_of_type",
    "positive_row",
    "c_phi_set",
    "parse_gamma",
    "CURATED_TYPES",
]


class FamilyDataUnavailable(LookupError):
    """Valid Cartan type without curated family data."""


class DataIntegrityError(RuntimeError):
    """Curated data violates a structural invariant."""


@dataclass(frozen=True)
class MSetElement:
    x: int  # element index of the class representative in Gamma
    sigma: int  # index into character_table(centralizer(Gamma, x))
    label: str = ""


def parse_gamma(gamma: str) -> tuple[str, int]:
    """'trivial' | 'S1'..'S5' | 'S2^e' -> (kind, parameter)."""
    g = gamma.strip().replace("**", "^")
    if g in ("1", "trivial", "S1"):
        return ("S", 1)
    m = re.fullmatch(r"S2\^(\d+)", g)
    if m:
        e = int(m.group(1))
        return ("S", 1) if e == 0 else ("S2^", e)
    m = re.fullmatch(r"S([2-5])", g)
    if m:
        return ("S", int(m.group(1)))
    raise ValueError(f"unsupported gamma {gamma!r}")


@lru_cache(maxsize=None)
def gamma_group(gamma: str) -> FiniteGroup:
    """Gamma as a permutation group; S2^e acts on 2e points."""
    kind, k = parse_gamma(gamma)
    if kind == "S":
        return symmetric_group(k)
    gens = []
    for i in range(k):
        p = list(range(2 * k))
        p[2 * i], p[2 * i + 1] = 2 * i + 1, 2 * i
        gens.append(tuple(p))
    return enumerate_group(gens, degree=2 * k)


def _cycle_type(g: tuple) -> str:
    seen, lens = set(), []
    for i in range(len(g)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = g[j]
            n += 1
        if n > 1:
            lens.append(n)
    return "".join(map(str, sorted(lens, reverse=True))) or "1"


@lru_cache(maxsize=None)
def _centralizers(gamma: str):
    G = gamma_group(gamma)
    out = []
    for r in G.conjugacy().representatives:
        C = centralizer(G, r)
        out.append((r, C, character_table(C)))
    return out


def m_set(gamma: str) -> list[MSetElement]:
    """Pairs (x, sigma), classes in representative order, characters in table order."""
    G = gamma_group(gamma)
    out = []
    for r, C, tbl in _centralizers(gamma):
        name = _cycle_type(G.elements[r])
        for s in range(len(tbl)):
            out.append(MSetElement(r, s, f"({name},{s})"))
    return out


def _class_counts(gamma: str, i: int, j: int) -> dict[tuple[int, int], int]:
    """For class reps x = rep_i, y = rep_j: counts of (class of gyg^-1 in C(x), class of g^-1xg in C(y))."""
    G = gamma_group(gamma)
    cents = _centralizers(gamma)
    rx, Cx, _ = cents[i]
    ry, Cy, _ = cents[j]
    x, y = G.elements[rx], G.elements[ry]
    cx, cy = Cx.conjugacy().class_of, Cy.conjugacy().class_of
    counts: dict[tuple[int, int], int] = {}
    for g in G.elements:
        gi = inv(g)
        y2 = mul(g, mul(y, gi))
        if mul(x, y2) != mul(y2, x):
            continue
        x2 = mul(gi, mul(x, g))
        key = (cx[Cx.index[y2]], cy[Cy.index[x2]])
        counts[key] = counts.get(key, 0) + 1
    return counts


def pairing(gamma: str, m1: MSetElement, m2: MSetElement) -> Cyclotomic:
    """The Fourier pairing {m1, m2} as an exact cyclotomic number."""
    cents = _centralizers(gamma)
    reps = [c[0] for c in cents]
    i, j = reps.index(m1.x), reps.index(m2.x)
    _, Cx, tx = cents[i]
    _, Cy, ty = cents[j]
    counts = _class_counts(gamma, i, j)
    keys = sorted(counts)
    s = tx[m1.sigma]
    t = ty[m2.sigma]
    val = dot([s[a] for a, _ in keys], [t[b].conjugate() for _, b in keys], [counts[k] for k in keys])
    return val * Fraction(1, Cx.order * Cy.order)


@lru_cache(maxsize=None)
def pairing_matrix(gamma: str) -> tuple[tuple[Cyclotomic, ...], ...]:
    """Full pairing matrix on m_set(gamma), computed class pair by class pair."""
    ms = m_set(gamma)
    cents = _centralizers(gamma)
    reps = [c[0] for c in cents]
    pos = [reps.index(m.x) for m in ms]
    counts = {}
    for i in range(len(reps)):
        for j in range(len(reps)):
            counts[i, j] = _class_counts(gamma, i, j)
    rows = []
    for a, m1 in enumerate(ms):
        row = []
        for b, m2 in enumerate(ms):
            i, j = pos[a], pos[b]
            c = counts[i, j]
            keys = sorted(c)
            s = cents[i][2][m1.sigma]
            t = cents[j][2][m2.sigma]
            v = dot([s[k[0]] for k in keys], [t[k[1]].conjugate() for k in keys], [c[k] for k in keys])
            row.append(v * Fraction(1, cents[i][1].order * cents[j][1].order))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class FourierMatrix:
    gamma: str
    labels: tuple[str, ...]
    entries: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij) -> Cyclotomic:
        i, j = ij
        return self.entries[i][j]

    def is_real(self) -> bool:
        return all(v == v.conjugate() for row in self.entries for v in row)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def square(self) -> list[list[Cyclotomic]]:
        n = self.size
        cols = [[self.entries[k][j] for k in range(n)] for j in range(n)]
        return [[dot(self.entries[i], cols[j]) for j in range(n)] for i in range(n)]

    def is_involution(self) -> bool:
        sq = self.square()
        n = self.size
        return all(sq[i][j] == (ONE if i == j else ZERO) for i in range(n) for j in range(n))

    def as_fractions(self) -> list[list[Fraction]]:
        """Entries as Fractions; raises ValueError if any entry is irrational."""
        return [[v.as_rational() for v in row] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "labels": list(self.labels),
            "entries": [[_entry_json(v) for v in row] for row in self.entries],
        }


def _entry_json(v: Cyclotomic):
    return str(v.as_rational()) if v.is_rational() else v.to_json()


def _kron(a, b):
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    )


@lru_cache(maxsize=None)
def fourier_matrix(gamma: str) -> FourierMatrix:
    """A(F) for Gamma in {trivial, S2^e, S3, S4, S5}.

    S2^e is the e-fold Kronecker power of the S2 matrix, labels being tuples
    of S2 labels in lexicographic order.
    """
    kind, k = parse_gamma(gamma)
    if kind == "S2^" and k > 1:
        base = fourier_matrix("S2")
        entries, labels = base.entries, base.labels
        for _ in range(k - 1):
            entries = _kron(entries, base.entries)
            labels = tuple(f"{a}x{b}" for a in labels for b in base.labels)
        return FourierMatrix(f"S2^{k}", labels, entries)
    name = "trivial" if (kind, k) == ("S", 1) else f"S{k}"
    ms = m_set(name)
    return FourierMatrix(name, tuple(m.label for m in ms), pairing_matrix(name))


# -- curated families ---------------------------------------------------------

_FAMILY_SIZES = {"trivial": 1, "S3": 8, "S4": 21, "S5": 39}


@dataclass(frozen=True)
class FamilyMember:
    label: str
    principal: bool
    phi: str | None
    m: int  # index into fourier.labels


@dataclass(frozen=True)
class FamilyRecord:
    cartan_type: str
    family_id: int
    gamma: str
    members: tuple[FamilyMember, ...]
    special: int
    fourier: FourierMatrix

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "type": self.cartan_type,
            "id": self.family_id,
            "gamma": self.gamma,
            "special": self.special,
            "members": [
                {"label": m.label, "principal": m.principal, "phi": m.phi, "m": self.fourier.labels[m.m]}
                for m in self.members
            ],
        }


def expected_family_size(gamma: str) -> int:
    kind, k = parse_gamma(gamma)
    if kind == "S2^":
        return 4**k
    if k == 1:
        return 1
    if k == 2:
        return 4
    return _FAMILY_SIZES[f"S{k}"]


@lru_cache(maxsize=1)
def _load_data() -> dict:
    text = resources.files("multbound").joinpath("data/families.json").read_text()
    return json.loads(text)


def _data_key(ct: CartanType) -> str:
    if not ct.is_simple:
        raise FamilyDataUnavailable(f"family data is stored per simple type, got {ct}")
    if ct.twist == 3 or (ct.twist == 2 and ct.components[0][0] != "A"):
        raise FamilyDataUnavailable(f"family data unavailable for {ct}")
    letter, n = ct.canonical().components[0] if ct.canonical().components else ("", 0)
    if letter == "C":
        letter = "B"
    return f"{letter}{n}"


CURATED_TYPES = ("A1", "A2", "A3", "A4", "A5", "B2", "C2", "G2", "B3", "C3", "D4")


def families_of_type(ct: CartanType | str) -> list[FamilyRecord]:
    """Families of unipotent characters of a simple curated type.

    2A_n shares the family data of A_n; other twisted types and types
    outside the curated set raise FamilyDataUnavailable.
    """
    ct = parse_type(ct)
    key = _data_key(ct)
    data = _load_data()["types"]
    if key not in data:
        raise FamilyDataUnavailable(f"family data unavailable for {ct}")
    out = []
    for fam in data[key]["families"]:
        F = fourier_matrix(fam["gamma"])
        members = tuple(
            FamilyMember(m["label"], m["principal"], m.get("phi"), F.labels.index(m["m"])) for m in fam["members"]
        )
        rec = FamilyRecord(str(ct), fam["id"], fam["gamma"], members, fam["special"], F)
        if rec.size != expected_family_size(rec.gamma) or rec.size != F.size:
            raise DataIntegrityError(f"family {fam['id']} of {ct} has size {rec.size} for gamma {rec.gamma}")
        if sorted(m.m for m in members) != list(range(F.size)):
            raise DataIntegrityError(f"family {fam['id']} of {ct} is not in bijection with M(gamma)")
        out.append(rec)
    return out


def positive_row(fam: FamilyRecord, member: int) -> tuple[str, list[Fraction]]:
    """(phi, gamma) with gamma the row of A(F) at a principal member, all entries > 0.

    Coefficients are listed in member order.  The special member's row is the
    (1, trivial) row, whose entries tau(1)/|C(y)| are positive; for Gamma =
    S2^e every entry there is 2^-e.
    """
    if not 0 <= member < fam.size:
        raise IndexError("member index out of range")
    candidates = [fam.special] + [i for i in range(fam.size) if i != fam.special]
    for r in candidates:
        head = fam.members[r]
        if not head.principal:
            continue
        row = [fam.fourier[head.m, m.m] for m in fam.members]
        if all(v.is_rational() and v.as_rational() > 0 for v in row):
            return head.phi, [v.as_rational() for v in row]
    raise DataIntegrityError(f"no positive principal row in family {fam.family_id} of {fam.cartan_type}")


def _simple_c_phi(ct: CartanType) -> frozenset[Fraction]:
    out: set[Fraction] = set()
    for fam in families_of_type(ct):
        _, row = positive_row(fam, fam.special)
        out.update(row)
    return frozenset(out)


def c_phi_set(ct: CartanType | str) -> frozenset[Fraction]:
    """Positive almost-character coefficients; products over components."""
    ct = parse_type(ct)
    if ct.twist in (2, 3):
        return _simple_c_phi(ct)
    acc = frozenset({Fraction(1)})
    for comp in CartanType(ct.components).canonical().components:
        part = _simple_c_phi(CartanType((comp,)))
        acc = frozenset(a * b for a in acc for b in part)
    return acc
