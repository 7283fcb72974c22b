"""Permutation groups materialized as element lists, with conjugacy data.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; products
compose right to left, ``(g * h)(i) = g(h(i))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import Cyclotomic, ONE, ZERO, dot

__all__ = [
    "GroupOrderError",
    "FiniteGroup",
    "ConjugacyData",
    "ClassFunction",
    "enumerate_group",
    "conjugacy_classes",
    "centralizer",
    "inner_product",
    "mul",
    "inv",
    "symmetric_group",
]

DEFAULT_ORDER_CAP = 10**6


class GroupOrderError(MemoryError):
    """The generated group exceeds the configured order cap."""


def mul(g: tuple, h: tuple) -> tuple:
    return tuple(g[i] for i in h)


def inv(g: tuple) -> tuple:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def _check_perm(p, degree):
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError(f"not a permutation of degree {degree}: {p!r}")


class FiniteGroup:
    """A finite permutation group with its full element list.

    The identity sits at index 0; ``index`` maps a permutation to its position.
    """

    def __init__(self, degree: int, generators, elements: list[tuple]):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self._conj = None
        self._inverse = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteGroup degree={self.degree} order={self.order}>"

    @property
    def identity(self) -> tuple:
        return self.elements[0]

    def mul_index(self, i: int, j: int) -> int:
        return self.index[mul(self.elements[i], self.elements[j])]

    def inverse_index(self, i: int) -> int:
        if self._inverse is None:
            self._inverse = [self.index[inv(g)] for g in self.elements]
        return self._inverse[i]

    def element_order(self, i: int) -> int:
        g = self.elements[i]
        ident = self.identity
        x, k = g, 1
        while x != ident:
            x = mul(g, x)
            k += 1
        return k

    def exponent(self) -> int:
        cd = self.conjugacy()
        e = 1
        for r in cd.representatives:
            e = math.lcm(e, self.element_order(r))
        return e

    def conjugacy(self) -> "ConjugacyData":
        if self._conj is None:
            self._conj = conjugacy_classes(self)
        return self._conj

    def contains(self, g) -> bool:
        return tuple(g) in self.index


def enumerate_group(generators, degree: int | None = None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a list of permutations under composition.

    The element order is breadth-first from the identity, applying generators
    in the given order, so it is a deterministic function of the input.
    """
    gens = [tuple(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        _check_perm(g, degree)
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupOrderError(f"group order exceeds cap {cap}")
        frontier = nxt
    return FiniteGroup(degree, gens, elements)


def subgroup_from_elements(degree: int, elements) -> FiniteGroup:
    """Subgroup given by its element set; picks generators greedily."""
    elements = sorted(set(tuple(e) for e in elements))
    ident = tuple(range(degree))
    gens: list[tuple] = []
    current = {ident}
    for e in elements:
        if e not in current:
            gens.append(e)
            current = set(enumerate_group(gens, degree).elements)
    grp = enumerate_group(gens, degree)
    if set(grp.elements) != set(elements):
        raise ValueError("element set is not closed under composition")
    return grp


@dataclass(frozen=True)
class ConjugacyData:
    classes: list[list[int]]
    class_of: list[int]
    representatives: list[int]
    centralizer_orders: list[int]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def __len__(self):
        return len(self.classes)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    """Classes by orbit closure under conjugation by the generators.

    Classes are ordered by their least element index, which is also the
    representative.
    """
    n = G.order
    class_of = [-1] * n
    classes: list[list[int]] = []
    gens = G.generators
    gens_inv = [inv(g) for g in gens]
    for i in range(n):
        if class_of[i] >= 0:
            continue
        cid = len(classes)
        orbit = [i]
        class_of[i] = cid
        k = 0
        while k < len(orbit):
            x = G.elements[orbit[k]]
            k += 1
            for g, gi in zip(gens, gens_inv):
                y = G.index[mul(g, mul(x, gi))]
                if class_of[y] < 0:
                    class_of[y] = cid
                    orbit.append(y)
        orbit.sort()
        classes.append(orbit)
    reps = [c[0] for c in classes]
    cent = [n // len(c) for c in classes]
    return ConjugacyData(classes, class_of, reps, cent)


def centralizer(G: FiniteGroup, x) -> FiniteGroup:
    """C_G(x) as a new group on the same points."""
    x = tuple(G.elements[x]) if isinstance(x, int) else tuple(x)
    if x not in G.index:
        raise ValueError("element not in group")
    elems = [g for g in G.elements if mul(g, x) == mul(x, g)]
    return subgroup_from_elements(G.degree, elems)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1} generated by (0 1) and the n-cycle."""
    if n == 1:
        return enumerate_group([], degree=1)
    t = list(range(n))
    t[0], t[1] = 1, 0
    c = [(i + 1) % n for i in range(n)]
    return enumerate_group([tuple(t), tuple(c)])


class ClassFunction:
    """A class function: one Cyclotomic value per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in values)
        if len(vals) != len(group.conjugacy()):
            raise ValueError("class function length must equal the number of classes")
        self.values = vals

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def degree(self) -> Cyclotomic:
        return self.values[0]

    def _check(self, other):
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            raise ValueError("class functions on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def conjugate(self):
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and other.group is self.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """<a, b> = |G|^-1 sum_g a(g) conj(b(g)), evaluated class by class."""
    if a.group is not b.group:
        raise ValueError("inner product of class functions on different groups")
    G = a.group
    sizes = G.conjugacy().sizes
    s = dot(a.values, [v.conjugate() for v in b.values], sizes)
    return s * Fraction(1, G.order)


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [G.order] + [0] * (len(G.conjugacy()) - 1))


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [ONE] * len(G.conjugacy()))


def permutation_character(G: FiniteGroup) -> ClassFunction:
    """Character of the natural action on {0..degree-1} (fixed-point counts)."""
    cd = G.conjugacy()
    vals = []
    for r in cd.representatives:
        g = G.elements[r]
        vals.append(sum(1 for i, j in enumerate(g) if i == j))
    return ClassFunction(G, vals)


def zero_function(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [ZERO] * len(G.conjugacy()))
