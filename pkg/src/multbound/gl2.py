"""Brute-force ground truth on GL_2(F_q) for small q.

The group is realized as a permutation group on the q^2 - 1 nonzero column
vectors of F_q^2.  Deligne-Lusztig characters are evaluated from the
classical closed formulas for the split torus T_1 (diagonal matrices) and the
nonsplit torus T_w (multiplications by F_{q^2}^x in a basis {1, alpha}).

Sign convention: R_T(theta) is the Deligne-Lusztig virtual character itself,
so R_{T_w}(1) = 1 - St and R_{T_1}(1) = 1 + St; both pair to 1 with the
trivial character.  For theta in general position -R_{T_w}(theta) is the
cuspidal irreducible of degree q - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chartable import CharacterTable, character_table
from .cyclotomic import Cyclotomic, ZERO, root_of_unity
from .groups import ClassFunction, FiniteGroup, enumerate_group, inner_product

__all__ = [
    "SUPPORTED_Q",
    "SPACE_LABELS",
    "GF",
    "Gl2Instance",
    "SphericalSpace",
    "build_instance",
    "make_space",
    "perm_character",
    "dl_character",
    "torus_characters",
    "weyl_twist_count",
    "multiplicities",
    "verify_dl_bound",
    "verify_theorem_a",
    "DLBoundReport",
    "TheoremAReport",
]

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)
SPACE_LABELS = ("flag", "split-torus", "torus-normalizer")
# fixed irreducible polynomials for the non-prime fields, low degree first
_FIELD_POLYS = {4: (2, 2, (1, 1, 1)), 8: (2, 3, (1, 1, 0, 1)), 9: (3, 2, (1, 0, 1))}


class GF:
    """F_q for q <= 9; elements are ints 0..q-1 encoding base-p digit vectors."""

    def __init__(self, q: int):
        if q in _FIELD_POLYS:
            p, deg, poly = _FIELD_POLYS[q]
        elif q in (2, 3, 5, 7):
            p, deg, poly = q, 1, None
        else:
            raise ValueError(f"unsupported field size q={q}")
        self.q, self.p, self.deg = q, p, deg

        def digits(x):
            return [(x // p**i) % p for i in range(deg)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        self.add_table = [[encode([(a + b) % p for a, b in zip(digits(x), digits(y))]) for y in range(q)] for x in range(q)]
        mt = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                dx, dy = digits(x), digits(y)
                prod = [0] * (2 * deg - 1)
                for i, a in enumerate(dx):
                    for j, b in enumerate(dy):
                        prod[i + j] = (prod[i + j] + a * b) % p
                if poly is not None:
                    for k in range(len(prod) - 1, deg - 1, -1):
                        c = prod[k]
                        if c:
                            for i, pc in enumerate(poly):
                                prod[k - deg + i] = (prod[k - deg + i] - c * pc) % p
                mt[x][y] = encode(prod[:deg])
        self.mul_table = mt
        self.neg_table = [next(y for y in range(q) if self.add_table[x][y] == 0) for x in range(q)]
        self.inv_table = [None] + [next(y for y in range(q) if mt[x][y] == 1) for x in range(1, q)]
        # least primitive element
        self.generator = next(g for g in range(2 if q > 2 else 1, q) if self._order(g) == q - 1)

    def _order(self, x):
        k, y = 1, x
        while y != 1:
            y = self.mul_table[y][x]
            k += 1
        return k

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]


Matrix = tuple  # (a, b, c, d) for [[a, b], [c, d]]


@dataclass
class Gl2Instance:
    q: int
    field: GF
    group: FiniteGroup
    vectors: list[tuple[int, int]]
    matrices: list[Matrix]
    matrix_index: dict
    zeta_matrix: Matrix
    split_torus: list[int]
    nonsplit_torus: list[int]
    borel: list[int]
    scalar_exponent: dict[int, int]
    _table: CharacterTable | None = field(default=None, repr=False)
    _class_types: list | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def table(self) -> CharacterTable:
        if self._table is None:
            self._table = character_table(self.group)
        return self._table

    def mat_mul(self, x: Matrix, y: Matrix) -> Matrix:
        F = self.field
        a, b, c, d = x
        e, f, g, h = y
        return (
            F.add(F.mul(a, e), F.mul(b, g)),
            F.add(F.mul(a, f), F.mul(b, h)),
            F.add(F.mul(c, e), F.mul(d, g)),
            F.add(F.mul(c, f), F.mul(d, h)),
        )

    def class_types(self) -> list[tuple]:
        """Per class: ('central', a) | ('unipotent', a) | ('split', a, b) | ('elliptic', k).

        Eigenvalues are exponents of the fixed generator of F_{q^2}^x.
        """
        if self._class_types is None:
            self._class_types = [self._classify(self.matrices[r]) for r in self.group.conjugacy().representatives]
        return self._class_types

    def _classify(self, m: Matrix) -> tuple:
        F = self.field
        a, b, c, d = m
        tr = F.add(a, d)
        det = F.sub(F.mul(a, d), F.mul(b, c))
        roots = [x for x in range(1, self.q) if F.add(F.sub(F.mul(x, x), F.mul(tr, x)), det) == 0]
        se = self.scalar_exponent
        if b == 0 and c == 0 and a == d:
            return ("central", se[a])
        if len(roots) == 1:
            return ("unipotent", se[roots[0]])
        if len(roots) == 2:
            return ("split", se[roots[0]], se[roots[1]])
        n = self.q * self.q - 1
        z = self.zeta_matrix
        x = z
        for k in range(1, n):
            xa, xb, xc, xd = x
            if F.add(xa, xd) == tr and F.sub(F.mul(xa, xd), F.mul(xb, xc)) == det:
                return ("elliptic", k)
            x = self.mat_mul(x, z)
        raise AssertionError("elliptic element without torus conjugate")


@lru_cache(maxsize=None)
def build_instance(q: int) -> Gl2Instance:
    """Fully enumerated GL_2(F_q) with torus, Borel and class data."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"unsupported q={q}; choose from {SUPPORTED_Q}")
    F = GF(q)
    vectors = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    vindex = {v: i for i, v in enumerate(vectors)}

    def perm_of(m: Matrix) -> tuple:
        a, b, c, d = m
        return tuple(
            vindex[(F.add(F.mul(a, x), F.mul(b, y)), F.add(F.mul(c, x), F.mul(d, y)))]
            for x, y in vectors
        )

    g = F.generator
    gens = [(g, 0, 0, 1), (1, 0, 0, g), (1, 1, 0, 1), (0, 1, 1, 0)]
    # drop generators equal to the identity (q = 2)
    gens = [m for m in gens if m != (1, 0, 0, 1)]
    G = enumerate_group([perm_of(m) for m in gens], degree=len(vectors))
    e1, e2 = vindex[(1, 0)], vindex[(0, 1)]
    matrices = []
    for p in G.elements:
        (a, c), (b, d) = vectors[p[e1]], vectors[p[e2]]
        matrices.append((a, b, c, d))
    matrix_index = {m: i for i, m in enumerate(matrices)}
    assert G.order == (q * q - 1) * (q * q - q)

    inst = Gl2Instance(
        q=q, field=F, group=G, vectors=vectors, matrices=matrices,
        matrix_index=matrix_index, zeta_matrix=(0, 0, 1, 0),
        split_torus=[], nonsplit_torus=[], borel=[], scalar_exponent={},
    )
    zeta = _primitive_companion(inst)
    inst.zeta_matrix = zeta
    n = q * q - 1
    powers = [(1, 0, 0, 1)]
    for _ in range(n - 1):
        powers.append(inst.mat_mul(powers[-1], zeta))
    inst.nonsplit_torus = [matrix_index[m] for m in powers]
    inst.scalar_exponent = {m[0]: k for k, m in enumerate(powers) if m[1] == 0 and m[2] == 0 and m[0] == m[3]}
    inst.split_torus = [i for i, m in enumerate(matrices) if m[1] == 0 and m[2] == 0]
    inst.borel = [i for i, m in enumerate(matrices) if m[2] == 0]
    return inst


def _primitive_companion(inst: Gl2Instance) -> Matrix:
    """Companion matrix of the first primitive quadratic x^2 - s x - t."""
    F = inst.field
    q = inst.q
    n = q * q - 1
    for s in range(q):
        for t in range(1, q):
            z = (0, t, 1, s)
            x, k = z, 1
            while x != (1, 0, 0, 1) and k <= n:
                x = inst.mat_mul(x, z)
                k += 1
            if k == n:
                return z
    raise AssertionError("no primitive quadratic found")


# -- spherical spaces ----------------------------------------------------------


@dataclass
class SphericalSpace:
    """G/H as a coset space: ``coset_of[i]`` is the coset of element i."""

    label: str
    inst: Gl2Instance
    subgroup: list[int]
    cosets: list[int]  # representative element index per coset
    coset_of: list[int]

    @property
    def size(self) -> int:
        return len(self.cosets)

    def act(self, g: int) -> tuple:
        """Permutation of cosets induced by group element g."""
        G = self.inst.group
        return tuple(self.coset_of[G.mul_index(g, x)] for x in self.cosets)

    def stabilizer(self, coset: int) -> set[int]:
        G = self.inst.group
        x = self.cosets[coset]
        xi = G.inverse_index(x)
        return {G.mul_index(G.mul_index(x, h), xi) for h in self.subgroup}


def _coset_space(label: str, inst: Gl2Instance, H: list[int]) -> SphericalSpace:
    G = inst.group
    coset_of = [-1] * G.order
    cosets = []
    for i in range(G.order):
        if coset_of[i] >= 0:
            continue
        cid = len(cosets)
        cosets.append(i)
        for h in H:
            coset_of[G.mul_index(i, h)] = cid
    return SphericalSpace(label, inst, sorted(H), cosets, coset_of)


def make_space(inst: Gl2Instance, label: str) -> SphericalSpace:
    """flag (G/B), split-torus (G/T_1), torus-normalizer (G/N(T_1)).

    ``point`` (G/G) and ``empty`` are accepted as degenerate test spaces.
    """
    ms = inst.matrices
    if label == "flag":
        H = inst.borel
    elif label == "split-torus":
        H = inst.split_torus
    elif label == "torus-normalizer":
        H = [i for i, m in enumerate(ms) if (m[1] == 0 and m[2] == 0) or (m[0] == 0 and m[3] == 0)]
    elif label == "point":
        H = list(range(inst.order))
    elif label == "empty":
        return SphericalSpace("empty", inst, [], [], [-1] * inst.order)
    else:
        raise ValueError(f"unknown space {label!r}")
    return _coset_space(label, inst, H)


def perm_character(inst: Gl2Instance, space: SphericalSpace) -> ClassFunction:
    """Number of fixed cosets: pi(g) = |C_G(g)| |g^G cap H| / |H|."""
    cd = inst.group.conjugacy()
    if not space.subgroup:
        return ClassFunction(inst.group, [0] * len(cd))
    hits = [0] * len(cd)
    for h in space.subgroup:
        hits[cd.class_of[h]] += 1
    vals = []
    for c in range(len(cd)):
        v = Fraction(cd.centralizer_orders[c] * hits[c], len(space.subgroup))
        assert v.denominator == 1
        vals.append(int(v))
    return ClassFunction(inst.group, vals)


# -- Deligne-Lusztig characters -------------------------------------------------


def torus_characters(inst: Gl2Instance, torus: str) -> int:
    q = inst.q
    if torus == "split":
        return (q - 1) ** 2
    if torus == "nonsplit":
        return q * q - 1
    raise ValueError(f"unknown torus {torus!r}")


def _split_char(q: int, m: int, k: int) -> Cyclotomic:
    # character alpha_m of F_q^x at the scalar zeta^k, k a multiple of q+1;
    # zeta^(q+1) generates F_q^x
    return root_of_unity(q - 1, m * (k // (q + 1)))


def dl_character(inst: Gl2Instance, torus: str, theta: int) -> ClassFunction:
    """R_T(theta) for T split (theta = m (q-1) + n <-> alpha_m x alpha_n) or nonsplit."""
    q = inst.q
    count = torus_characters(inst, torus)
    if not 0 <= theta < count:
        raise ValueError(f"theta index {theta} out of range for the {torus} torus")
    vals = []
    if torus == "split":
        m, n = divmod(theta, q - 1)

        def alpha(k):
            return _split_char(q, m, k)

        def beta(k):
            return _split_char(q, n, k)

        for t in inst.class_types():
            if t[0] == "central":
                vals.append((q + 1) * alpha(t[1]) * beta(t[1]))
            elif t[0] == "unipotent":
                vals.append(alpha(t[1]) * beta(t[1]))
            elif t[0] == "split":
                a, b = t[1], t[2]
                vals.append(alpha(a) * beta(b) + alpha(b) * beta(a))
            else:
                vals.append(ZERO)
    else:
        N = q * q - 1

        def th(k):
            return root_of_unity(N, theta * k)

        for t in inst.class_types():
            if t[0] == "central":
                vals.append((1 - q) * th(t[1]))
            elif t[0] == "unipotent":
                vals.append(th(t[1]))
            elif t[0] == "split":
                vals.append(ZERO)
            else:
                vals.append(th(t[1]) + th(t[1] * q))
    return ClassFunction(inst.group, vals)


def weyl_twist_count(q: int, torus1: str, theta1: int, torus2: str, theta2: int) -> int:
    """#{w in W(T1, T2)^F : w theta1 = theta2} for GL_2."""
    if torus1 != torus2:
        return 0
    if torus1 == "split":
        m1, n1 = divmod(theta1, q - 1)
        m2, n2 = divmod(theta2, q - 1)
        return int((m1, n1) == (m2, n2)) + int((m1, n1) == (n2, m2))
    N = q * q - 1
    return int(theta1 % N == theta2 % N) + int(theta1 * q % N == theta2 % N)


def multiplicities(inst: Gl2Instance, space: SphericalSpace) -> list[int]:
    """<chi, pi> for every irreducible chi, in character-table order."""
    pi = perm_character(inst, space)
    out = []
    for chi in inst.table():
        v = inner_product(pi, chi).as_rational()
        if v is None or v.denominator != 1 or v < 0:
            raise ArithmeticError(f"non-integral multiplicity {v}")
        out.append(int(v))
    return out


# -- verification reports -----------------------------------------------------


@dataclass
class DLBoundReport:
    q: int
    space: str
    c: int
    max_attained: int
    witness: tuple  # (torus, theta, value)
    passed: bool
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "space": self.space,
            "c": self.c,
            "max_attained": self.max_attained,
            "witness": {"torus": self.witness[0], "theta": self.witness[1], "value": self.witness[2]},
            "passed": self.passed,
        }


def verify_dl_bound(inst: Gl2Instance, space: SphericalSpace, c: int) -> DLBoundReport:
    """Check |<R_T(theta), pi>| <= c over both tori and every theta."""
    pi = perm_character(inst, space)
    best = (-1, None)
    values = {}
    for torus in ("split", "nonsplit"):
        for theta in range(torus_characters(inst, torus)):
            R = dl_character(inst, torus, theta)
            v = inner_product(R, pi).as_rational()
            if v is None or v.denominator != 1:
                raise ArithmeticError(f"non-integral pairing {v}")
            v = int(v)
            values[(torus, theta)] = v
            if abs(v) > best[0]:
                best = (abs(v), (torus, theta, v))
    return DLBoundReport(inst.q, space.label, c, best[0], best[1], best[0] <= c, values)


@dataclass
class TheoremAReport:
    space: str
    C: int
    trend: list[tuple[int, int, int]]  # (q, max multiplicity, argmax degree)
    max_multiplicity: int
    passed: bool  # max <= C
    passed_strict: bool  # max < C
    constant_in_q: bool

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "C": self.C,
            "trend": [{"q": q, "max_multiplicity": m, "degree": d} for q, m, d in self.trend],
            "max_multiplicity": self.max_multiplicity,
            "passed": self.passed,
            "passed_strict": self.passed_strict,
            "constant_in_q": self.constant_in_q,
        }


def verify_theorem_a(space_label: str, qs, C: int) -> TheoremAReport:
    """Max multiplicity over all irreducibles for each q, compared to C."""
    trend = []
    for q in qs:
        inst = build_instance(q)
        mults = multiplicities(inst, make_space(inst, space_label))
        m = max(mults)
        deg = inst.table().degrees()[mults.index(m)]
        trend.append((q, m, deg))
    mx = max(t[1] for t in trend)
    return TheoremAReport(
        space_label, C, trend, mx, mx <= C, mx < C, len({t[1] for t in trend}) == 1
    )
