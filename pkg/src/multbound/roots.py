"""Crystallographic root systems, Weyl groups and closed subsystems.

Roots are integer vectors in the basis of simple roots.  Conventions follow
Bourbaki's node numbering; ``cartan[i][j] = <alpha_i, alpha_j^vee>``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, enumerate_group, mul, inv

__all__ = [
    "CartanType",
    "RootSystemData",
    "SubsystemRecord",
    "UnsupportedTypeError",
    "parse_type",
    "build",
    "closed_subsystems",
    "closed_subsystems_exhaustive",
    "closed_subsystems_bds",
    "classify_subsystem",
    "diagram_automorphism",
    "dual_type",
    "is_closed",
    "is_symmetric",
    "weyl_order",
    "root_count",
]

MAX_BUILD_RANK = 6


class UnsupportedTypeError(ValueError):
    """Type outside the supported range (invalid, or too large to enumerate)."""


_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 2,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# twisted forms; the Suzuki-Ree labels are accepted but carry no family data
_TWISTS = {2: {"A", "D", "E"}, 3: {"D"}}
_SUZUKI_REE = {("B", 2), ("G", 2), ("F", 4)}


@dataclass(frozen=True)
class CartanType:
    """A (possibly reducible, possibly empty) Cartan type with optional twist."""

    components: tuple[tuple[str, int], ...] = ()
    twist: int | None = None

    def __post_init__(self):
        for letter, n in self.components:
            if letter not in _VALID or not _VALID[letter](n):
                raise UnsupportedTypeError(f"invalid Cartan type {letter}{n}")
        if self.twist not in (None, 1, 2, 3):
            raise UnsupportedTypeError(f"invalid twist {self.twist}")
        if self.twist in (2, 3):
            if len(self.components) != 1:
                raise UnsupportedTypeError("twisted types must be simple")
            letter, n = self.components[0]
            if self.twist == 3 and (letter, n) != ("D", 4):
                raise UnsupportedTypeError("triality twist exists only on D4")
            if self.twist == 2:
                ok = (
                    (letter == "A" and n >= 2)
                    or (letter == "D" and n >= 4)
                    or (letter, n) == ("E", 6)
                    or (letter, n) in _SUZUKI_REE
                )
                if not ok:
                    raise UnsupportedTypeError(f"no twisted form 2{letter}{n}")

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    @property
    def data_incomplete(self) -> bool:
        """Suzuki-Ree labels: accepted, but no family data exists here."""
        return self.twist == 2 and self.components[0] in _SUZUKI_REE

    def canonical(self) -> "CartanType":
        comps = []
        for letter, n in self.components:
            # B2 = C2, D3 = A3, D2 = A1 x A1
            if (letter, n) == ("C", 2):
                comps.append(("B", 2))
            elif (letter, n) == ("D", 3):
                comps.append(("A", 3))
            elif (letter, n) == ("D", 2):
                comps.extend([("A", 1), ("A", 1)])
            else:
                comps.append((letter, n))
        return CartanType(tuple(sorted(comps, key=lambda c: ("ABCDEFG".index(c[0]), c[1]))), self.twist)

    def __str__(self):
        body = "x".join(f"{l}{n}" for l, n in self.components) or "0"
        return f"{self.twist}{body}" if self.twist in (2, 3) else body


def parse_type(text: str | CartanType) -> CartanType:
    """'G2', 'A1xB2', 'A1+B2', '2A3', '3D4', '0' (empty)."""
    if isinstance(text, CartanType):
        return text
    s = text.strip().replace("×", "x").replace("+", "x").replace("^", "")
    twist = None
    m = re.match(r"^([23])([A-G].*)$", s)
    if m:
        twist = int(m.group(1))
        s = m.group(2)
    if s in ("", "0", "∅", "empty"):
        return CartanType((), twist)
    comps = []
    for part in s.split("x"):
        m = re.fullmatch(r"([A-Ga-g])(\d+)", part.strip())
        if not m:
            raise UnsupportedTypeError(f"cannot parse Cartan type {text!r}")
        comps.append((m.group(1).upper(), int(m.group(2))))
    return CartanType(tuple(comps), twist)


def dual_type(ct: CartanType) -> CartanType:
    """B_n <-> C_n; all other simple types are self-dual."""
    swap = {"B": "C", "C": "B"}
    return CartanType(tuple((swap.get(l, l), n) for l, n in ct.components), ct.twist)


def weyl_order(ct: CartanType) -> int:
    """Closed-form |W| per component."""
    out = 1
    for letter, n in ct.components:
        if letter == "A":
            out *= math.factorial(n + 1)
        elif letter in "BC":
            out *= 2**n * math.factorial(n)
        elif letter == "D":
            out *= 2 ** (n - 1) * math.factorial(n)
        elif letter == "E":
            out *= {6: 51840, 7: 2903040, 8: 696729600}[n]
        elif letter == "F":
            out *= 1152
        elif letter == "G":
            out *= 12
    return out


def root_count(ct: CartanType) -> int:
    out = 0
    for letter, n in ct.components:
        if letter == "A":
            out += n * (n + 1)
        elif letter in "BC":
            out += 2 * n * n
        elif letter == "D":
            out += 2 * n * (n - 1)
        elif letter == "E":
            out += {6: 72, 7: 126, 8: 240}[n]
        elif letter == "F":
            out += 48
        elif letter == "G":
            out += 12
    return out


def _simple_cartan(letter: str, n: int) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix and half squared lengths d_i for a simple type."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    d = [1] * n
    if letter == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
        d = [2] * (n - 1) + [1]
    elif letter == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
        d = [1] * (n - 1) + [2]
    elif letter == "D":
        for i in range(n - 3):
            link(i, i + 1)
        if n >= 3:
            link(n - 3, n - 2)
            link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
        d = [2, 2, 1, 1]
    elif letter == "G":
        link(0, 1, -1, -3)
        d = [1, 3]
    return A, d


@dataclass
class RootSystemData:
    cartan_type: CartanType
    rank: int
    cartan: list[list[int]]
    half_lengths: list[int]
    roots: list[tuple[int, ...]]
    positive: list[bool]
    simple: list[int]
    root_index: dict
    weyl: FiniteGroup
    reflections: list[tuple]
    _w_array: np.ndarray | None = field(default=None, repr=False)
    _sum_table: list | None = field(default=None, repr=False)

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def form(self, x, y) -> int:
        """Symmetric invariant form with (alpha_i, alpha_i) = 2 d_i."""
        A, d = self.cartan, self.half_lengths
        return sum(x[i] * A[i][j] * d[j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def coroot_pairing(self, beta, gamma) -> int:
        """<beta, gamma^vee>."""
        return 2 * self.form(beta, gamma) // self.form(gamma, gamma)

    def w_array(self) -> np.ndarray:
        if self._w_array is None:
            self._w_array = np.array(self.weyl.elements, dtype=np.int32).reshape(self.weyl.order, self.nroots)
        return self._w_array

    def sum_table(self) -> list[list[int]]:
        """sum_table[i][j] = index of roots[i] + roots[j], or -1."""
        if self._sum_table is None:
            idx = self.root_index
            self._sum_table = [
                [idx.get(tuple(a + b for a, b in zip(r, s)), -1) for s in self.roots] for r in self.roots
            ]
        return self._sum_table

    def negation(self, i: int) -> int:
        return self.root_index[tuple(-a for a in self.roots[i])]

    def highest_root(self) -> tuple[int, ...]:
        """Highest root (irreducible systems only)."""
        if len(self.cartan_type.components) != 1:
            raise ValueError("highest root needs an irreducible system")
        return max((r for r, p in zip(self.roots, self.positive) if p), key=sum)


def _positive_roots(A: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = list(simple)
    known = set(roots)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for j in range(n):
                if beta == simple[j]:
                    continue
                pairing = sum(beta[i] * A[i][j] for i in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[j] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[j] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        roots.extend(nxt)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def _build_cached(ct: CartanType) -> RootSystemData:
    n = ct.rank
    A = [[0] * n for _ in range(n)]
    d = [1] * n
    off = 0
    for letter, k in ct.components:
        Ak, dk = _simple_cartan(letter, k)
        for i in range(k):
            d[off + i] = dk[i]
            for j in range(k):
                A[off + i][off + j] = Ak[i][j]
        off += k
    pos = []
    off = 0
    for letter, k in ct.components:
        sub = [row[off : off + k] for row in A[off : off + k]]
        for r in _positive_roots(sub):
            v = [0] * n
            v[off : off + k] = r
            pos.append(tuple(v))
        off += k
    pos.sort(key=lambda r: (sum(r), r))
    roots = pos + [tuple(-a for a in r) for r in pos]
    positive = [True] * len(pos) + [False] * len(pos)
    root_index = {r: i for i, r in enumerate(roots)}
    simple = [root_index[tuple(int(i == j) for j in range(n))] for i in range(n)]
    reflections = []
    for j in range(n):
        perm = []
        for r in roots:
            c = sum(r[i] * A[i][j] for i in range(n))
            img = list(r)
            img[j] -= c
            perm.append(root_index[tuple(img)])
        reflections.append(tuple(perm))
    W = enumerate_group(reflections, degree=len(roots))
    return RootSystemData(ct, n, A, d, roots, positive, simple, root_index, W, reflections)


def build(ct: CartanType | str) -> RootSystemData:
    """Roots and Weyl group (as permutations of the roots) for a Cartan type."""
    ct = parse_type(ct)
    if ct.rank > MAX_BUILD_RANK:
        raise UnsupportedTypeError(f"rank {ct.rank} exceeds the enumeration cap {MAX_BUILD_RANK}")
    return _build_cached(CartanType(ct.components))


# -- subsystems ------------------------------------------------------------------


@dataclass(frozen=True)
class SubsystemRecord:
    roots: tuple[int, ...]
    cartan_type: CartanType
    label: str
    representative: bool = True

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "cartan_type": str(self.cartan_type),
            "size": len(self.roots),
            "roots": list(self.roots),
            "representative": self.representative,
        }


def is_symmetric(rs: RootSystemData, subset) -> bool:
    s = set(subset)
    return all(rs.negation(i) in s for i in s)


def is_closed(rs: RootSystemData, subset) -> bool:
    """alpha, beta in S and alpha + beta a root imply alpha + beta in S."""
    s = set(subset)
    idx = rs.root_index
    for i in s:
        for j in s:
            r = tuple(a + b for a, b in zip(rs.roots[i], rs.roots[j]))
            k = idx.get(r)
            if k is not None and k not in s:
                return False
    return True


def _closure(rs: RootSystemData, subset) -> frozenset:
    st = rs.sum_table()
    s = set(subset)
    s |= {rs.negation(i) for i in s}
    todo = list(s)
    while todo:
        i = todo.pop()
        for j in list(s):
            k = st[i][j]
            if k >= 0 and k not in s:
                s.add(k)
                todo.append(k)
    return frozenset(s)


def _canonical_form(rs: RootSystemData, subset) -> tuple[int, ...]:
    """Lexicographically least sorted image of the subset under W."""
    if not subset:
        return ()
    idx = np.array(sorted(subset), dtype=np.int64)
    imgs = rs.w_array()[:, idx]
    imgs.sort(axis=1)
    best = np.lexsort(imgs.T[::-1])[0]
    return tuple(int(x) for x in imgs[best])


def _simple_system(rs: RootSystemData, subset) -> list[int]:
    st = rs.sum_table()
    pos = [i for i in subset if rs.positive[i]]
    decomposable = set()
    for a in pos:
        for b in pos:
            k = st[a][b]
            if k >= 0:
                decomposable.add(k)
    return sorted(i for i in pos if i not in decomposable)


def _components(rs: RootSystemData, simple: list[int]) -> list[list[int]]:
    """Connected components of the Dynkin diagram on a simple system."""
    comps: list[list[int]] = []
    seen: set[int] = set()
    for s in simple:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in simple:
                if b not in seen and rs.form(rs.roots[a], rs.roots[b]) != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def _classify_connected(rs: RootSystemData, nodes: list[int]) -> tuple[str, int]:
    n = len(nodes)
    if n == 1:
        return ("A", 1)
    R = [rs.roots[i] for i in nodes]
    A = [[rs.coroot_pairing(R[i], R[j]) for j in range(n)] for i in range(n)]
    lengths = [rs.form(r, r) for r in R]
    bonds = {(i, j): A[i][j] * A[j][i] for i in range(n) for j in range(i + 1, n) if A[i][j]}
    deg = [sum(1 for (i, j) in bonds if k in (i, j)) for k in range(n)]
    if 3 in bonds.values():
        return ("G", 2)
    if 2 in bonds.values():
        if n == 2:
            return ("B", 2)
        (i, j), = [e for e, m in bonds.items() if m == 2]
        if deg[i] == 2 and deg[j] == 2:
            return ("F", 4)
        end = i if deg[i] == 1 else j
        other = j if end == i else i
        return ("B", n) if lengths[end] < lengths[other] else ("C", n)
    branch = [k for k in range(n) if deg[k] == 3]
    if not branch:
        return ("A", n)
    b = branch[0]
    arms = []
    for nb in [j for (i, j) in bonds if i == b] + [i for (i, j) in bonds if j == b]:
        length, prev, cur = 1, b, nb
        while True:
            nxt = [x for e in bonds for x in e if cur in e and x not in (cur, prev)]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    return ("E", n)


def classify_subsystem(rs: RootSystemData, subset) -> CartanType:
    """Cartan type of a closed symmetric subset, from a simple system."""
    subset = set(subset)
    if not is_symmetric(rs, subset) or not is_closed(rs, subset):
        raise ValueError("subset is not a closed symmetric subsystem")
    simple = _simple_system(rs, subset)
    comps = [_classify_connected(rs, c) for c in _components(rs, simple)]
    return CartanType(tuple(comps)).canonical()


def _label(rs: RootSystemData, subset) -> str:
    simple = _simple_system(rs, subset)
    lengths = {rs.form(rs.roots[i], rs.roots[i]) for i in range(rs.nroots)}
    long_len = max(lengths) if lengths else 0
    parts = []
    for comp in _components(rs, simple):
        letter, n = _classify_connected(rs, comp)
        name = f"{letter}{n}"
        if letter == "A" and len(lengths) > 1 and rs.form(rs.roots[comp[0]], rs.roots[comp[0]]) < long_len:
            name += "~"
        parts.append(name)
    parts.sort(key=lambda s: ("ABCDEFG".index(s[0]), int(s[1:].rstrip("~")), s))
    return "x".join(parts) or "0"


def _record(rs: RootSystemData, canon: tuple[int, ...]) -> SubsystemRecord:
    return SubsystemRecord(canon, classify_subsystem(rs, canon), _label(rs, canon))


def _sorted_records(rs, canons) -> list[SubsystemRecord]:
    recs = [_record(rs, c) for c in canons]
    recs.sort(key=lambda r: (len(r.roots), r.label, r.roots))
    return recs


def closed_subsystems_exhaustive(rs: RootSystemData) -> list[SubsystemRecord]:
    """Every closed symmetric subset up to W-conjugacy, by closure search.

    Each closed subset is reached from the empty set by repeatedly adding a
    pair of opposite roots and closing, so breadth-first search over
    conjugacy representatives is complete.
    """
    start = ()
    seen = {start}
    frontier = [start]
    positives = [i for i in range(rs.nroots) if rs.positive[i]]
    while frontier:
        nxt = []
        for s in frontier:
            sset = set(s)
            for a in positives:
                if a in sset:
                    continue
                c = _canonical_form(rs, _closure(rs, sset | {a}))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return _sorted_records(rs, seen)


def _coefficients(rs: RootSystemData, basis: list[int], root: int) -> list[int]:
    """Coordinates of a root in a simple system of a subsystem containing it."""
    n = len(basis)
    M = [[Fraction(rs.roots[b][i]) for b in basis] + [Fraction(rs.roots[root][i])] for i in range(rs.rank)]
    rows = len(M)
    r = 0
    piv = []
    for c in range(n):
        k = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    out = [0] * n
    for i, c in enumerate(piv):
        v = M[i][n]
        assert v.denominator == 1
        out[c] = int(v)
    return out


def _prime_divisors(m: int) -> list[int]:
    return [p for p in range(2, m + 1) if m % p == 0 and all(p % d for d in range(2, p))]


def _bds_children(rs: RootSystemData, subset: frozenset) -> list[frozenset]:
    """Subsystems from deleting one node of a component's extended diagram.

    For each component with simple roots s_1..s_r and highest-root marks
    m_i: {coefficient of s_i == 0} (simple-node deletion) and, for each prime
    p | m_i, {coefficient of s_i == 0 mod p} (extended-node deletion).  These
    contain every maximal closed subsystem of the component.
    """
    simple = _simple_system(rs, subset)
    out = []
    for comp in _components(rs, simple):
        comp_roots = [i for i in subset if all(
            c == 0 or simple[k] in comp
            for k, c in enumerate(_coefficients(rs, simple, i))
        )]
        coeffs = {i: _coefficients(rs, comp, i) for i in comp_roots}
        rest = subset - set(comp_roots)
        highest = max((c for i, c in coeffs.items() if rs.positive[i]), key=sum)
        for k, mark in enumerate(highest):
            keep = {i for i, c in coeffs.items() if c[k] == 0}
            out.append(frozenset(rest | keep))
            for p in _prime_divisors(mark):
                keep = {i for i, c in coeffs.items() if c[k] % p == 0}
                out.append(frozenset(rest | keep))
    return out


def closed_subsystems_bds(rs: RootSystemData) -> list[SubsystemRecord]:
    """Closed subsystems up to W-conjugacy by Borel-de Siebenthal recursion."""
    full = frozenset(range(rs.nroots))
    top = _canonical_form(rs, full)
    seen = {top}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            for child in _bds_children(rs, s):
                c = _canonical_form(rs, child)
                if c not in seen:
                    seen.add(c)
                    nxt.append(frozenset(c))
        frontier = nxt
    seen.add(())
    return _sorted_records(rs, seen)


def closed_subsystems(rs: RootSystemData) -> list[SubsystemRecord]:
    """Closed symmetric subsystems up to W-conjugacy, including 0 and the whole system."""
    if rs.rank > MAX_BUILD_RANK:
        raise UnsupportedTypeError("rank cap exceeded")
    if rs.rank <= 4:
        return closed_subsystems_exhaustive(rs)
    return closed_subsystems_bds(rs)


# -- diagram automorphisms ----------------------------------------------------------


def _node_permutation(ct: CartanType, order: int) -> list[int]:
    if len(ct.components) != 1:
        raise UnsupportedTypeError("diagram automorphisms are provided for simple types only")
    letter, n = ct.components[0]
    if order == 2:
        if letter == "A" and n >= 2:
            return [n - 1 - i for i in range(n)]
        if letter == "D" and n >= 4:
            return list(range(n - 2)) + [n - 1, n - 2]
        if (letter, n) == ("E", 6):
            return [5, 1, 4, 3, 2, 0]
    if order == 3 and (letter, n) == ("D", 4):
        return [2, 1, 3, 0]
    raise UnsupportedTypeError(f"{ct} has no diagram automorphism of order {order}")


def diagram_automorphism(rs: RootSystemData, order: int) -> tuple[int, ...]:
    """Root permutation induced by the graph automorphism of the given order."""
    pi = _node_permutation(rs.cartan_type, order)
    perm = []
    for r in rs.roots:
        img = [0] * rs.rank
        for i, c in enumerate(r):
            img[pi[i]] = c
        perm.append(rs.root_index[tuple(img)])
    return tuple(perm)
