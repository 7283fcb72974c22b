"""Exact arithmetic in cyclotomic fields.

An element of Q(zeta_n) is stored as a sparse map ``exponent -> coefficient``
over a fixed integral basis of roots of unity.  The basis is chosen prime by
prime: writing the CRT component of an exponent ``k`` at ``p^e || n`` as
``t = k * (n / p^e)^{-1} mod p^e`` and its top digit as ``b = t // p^(e-1)``,
the basis keeps the exponents with ``b != 0`` for odd ``p`` and ``b == 0`` for
``p == 2``.  Orders congruent to 2 mod 4 never occur.  After reduction to this
basis the order is shrunk while the value lies in a smaller cyclotomic field,
so two elements are equal exactly when their ``(order, coeffs)`` agree.

>>> z3 = root_of_unity(3, 1)
>>> z3 + z3 * z3
Cyclotomic(-1)
>>> root_of_unity(4, 1) ** 2
Cyclotomic(-1)
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Cyclotomic",
    "root_of_unity",
    "as_cyclotomic",
    "is_rational",
    "as_rational",
    "to_complex",
    "MarginError",
]

# decision margin for sign tests that cannot be settled by as_rational
SIGN_MARGIN = 1e-9


class MarginError(ArithmeticError):
    """A floating-point sign decision fell inside the safety margin."""


def _norm(c):
    # keep integral coefficients as plain ints; Fraction arithmetic is slow
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _prime_data(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Per prime p^e || n: (p, p^e, p^(e-1), inverse of n/p^e mod p^e)."""
    out = []
    for p, e in _factor(n):
        pe = p**e
        cof = n // pe
        out.append((p, pe, pe // p, pow(cof, -1, pe)))
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_mask(n: int) -> tuple[bool, ...]:
    """_basis_mask(n)[k] is True when zeta_n^k belongs to the basis."""
    mask = [True] * n
    for p, pe, pe1, inv in _prime_data(n):
        for k in range(n):
            if not mask[k]:
                continue
            b = (k * inv % pe) // pe1
            if (p == 2 and b != 0) or (p != 2 and b == 0):
                mask[k] = False
    return tuple(mask)


def _reduce_to_basis(n: int, coeffs: dict[int, object]) -> dict[int, object]:
    """Rewrite sum c_k zeta_n^k over the basis of Q(zeta_n); n % 4 != 2."""
    res = {k: c for k, c in coeffs.items() if c}
    for p, pe, pe1, inv in _prime_data(n):
        step = n // p
        bad = []
        for k in res:
            b = (k * inv % pe) // pe1
            if (p == 2 and b != 0) or (p != 2 and b == 0):
                bad.append(k)
        for k in bad:
            c = res.pop(k, 0)
            if not c:
                continue
            # zeta^k = -sum_{j=1}^{p-1} zeta^(k + j n/p); for p = 2 this is
            # zeta^k = -zeta^(k + n/2)
            for j in range(1, p):
                kk = (k + j * step) % n
                v = res.get(kk, 0) - c
                if v:
                    res[kk] = v
                else:
                    res.pop(kk, None)
    return res


def _halve_order(n: int, coeffs: dict[int, object]) -> tuple[int, dict[int, object]]:
    # n = 2m with m odd: zeta_n^k = (-1)^k zeta_m^(k (m+1)/2)
    m = n // 2
    h = (m + 1) // 2
    out: dict[int, object] = {}
    for k, c in coeffs.items():
        kk = k * h % m if m > 1 else 0
        v = out.get(kk, 0) + (-c if k % 2 else c)
        out[kk] = v
    return m, out


def _shrink(n: int, res: dict[int, object]) -> tuple[int, dict[int, object]]:
    """Lower the order while the value lies in a smaller cyclotomic field.

    ``res`` must already be in basis form for ``n``.
    """
    changed = True
    while changed and n > 1:
        changed = False
        if not res:
            return 1, {}
        for p, pe, pe1, inv in _prime_data(n):
            if pe == p and p != 2:
                # p || n: the value descends iff, within every orbit
                # k + (n/p)Z, the p-1 basis coefficients agree
                m = n // p
                groups: dict[int, dict[int, object]] = {}
                for k, c in res.items():
                    groups.setdefault(k % m, {})[k * inv % p] = c
                ok = all(
                    len(g) == p - 1 and len(set(g.values())) == 1 for g in groups.values()
                )
                if not ok:
                    continue
                invp = pow(p, -1, m) if m > 1 else 0
                new = {}
                for r, g in groups.items():
                    c = next(iter(g.values()))
                    new[r * invp % m if m > 1 else 0] = -c
                n, res = m, new
                if n % 4 == 2:
                    n, res = _halve_order(n, res)
                res = _reduce_to_basis(n, res) if n > 1 else _collapse(res)
                changed = True
                break
            if p == 2 and pe == 4:
                # Q(zeta_n) = Q(zeta_{n/4})(i)
                if all(k % 4 == 0 for k in res):
                    n = n // 4
                    res = {k // 4: c for k, c in res.items()}
                    res = _reduce_to_basis(n, res) if n > 1 else _collapse(res)
                    changed = True
                    break
                continue
            # p^2 | n (and 8 | n when p = 2): descend iff p divides every exponent
            if all(k % p == 0 for k in res):
                n = n // p
                res = {k // p: c for k, c in res.items()}
                changed = True
                break
    if n == 1:
        res = _collapse(res)
    return n, res


def _collapse(res: dict[int, object]) -> dict[int, object]:
    total = sum(res.values(), 0)
    return {0: total} if total else {}


def _canonical(n: int, coeffs: dict[int, object]) -> tuple[int, dict[int, object]]:
    if n % 4 == 2:
        n, coeffs = _halve_order(n, coeffs)
    if n == 1:
        return 1, _collapse(coeffs)
    res = _reduce_to_basis(n, coeffs)
    n, res = _shrink(n, res)
    return n, {k: _norm(c) for k, c in res.items() if c}


def _lift(n: int, coeffs: dict[int, object], big: int) -> dict[int, object]:
    s = big // n
    return {k * s: c for k, c in coeffs.items()}


class Cyclotomic:
    """An exact element of an abelian number field Q(zeta_order).

    Instances are immutable.  ``order`` is the smallest n with the value in
    Q(zeta_n) (1 for rationals) and ``coeffs`` is a sorted tuple of
    ``(exponent, coefficient)`` pairs with nonzero rational coefficients.
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int = 1, coeffs=None, *, _canon: bool = False):
        if order < 1:
            raise ValueError("order must be a positive integer")
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            d: dict[int, object] = {}
            for k, c in coeffs:
                d[k % order] = d.get(k % order, 0) + _as_coeff(c)
            coeffs = d
        if not _canon:
            red: dict[int, object] = {}
            for k, c in coeffs.items():
                red[k % order] = red.get(k % order, 0) + c
            order, coeffs = _canonical(order, red)
        self.order = order
        self.coeffs = tuple(sorted(coeffs.items()))
        self._hash = None

    # -- construction helpers -------------------------------------------
    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        value = _norm(_as_coeff(value))
        return cls(1, {0: value} if value else {}, _canon=True)

    @classmethod
    def from_multiplicities(cls, order: int, mult) -> "Cyclotomic":
        """Sum of mult[j] * zeta_order^j (e.g. an eigenvalue multiset)."""
        return cls(order, {j: m for j, m in enumerate(mult) if m})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self):
        """The value as a Fraction, or None if irrational."""
        if self.order != 1:
            return None
        return Fraction(self.coeffs[0][1]) if self.coeffs else Fraction(0)

    # -- arithmetic -------------------------------------------------------
    def _binary(self, other, op):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return op(self, other)

    def __add__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        big = math.lcm(self.order, other.order)
        acc = _lift(self.order, dict(self.coeffs), big)
        for k, c in _lift(other.order, dict(other.coeffs), big).items():
            acc[k] = acc.get(k, 0) + c
        return Cyclotomic(big, acc)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {k: -c for k, c in self.coeffs}, _canon=True)

    def __sub__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        if other.order == 1:
            c = other.coeffs[0][1]
            return Cyclotomic(
                self.order, {k: _norm(a * c) for k, a in self.coeffs}, _canon=True
            )
        if self.order == 1:
            return other * self
        big = math.lcm(self.order, other.order)
        sa, sb = big // self.order, big // other.order
        acc: dict[int, object] = {}
        for ka, ca in self.coeffs:
            ka *= sa
            for kb, cb in other.coeffs:
                k = (ka + kb * sb) % big
                acc[k] = acc.get(k, 0) + ca * cb
        return Cyclotomic(big, acc)

    __rmul__ = __mul__

    def galois(self, a: int) -> "Cyclotomic":
        """Image under zeta -> zeta^a, gcd(a, order) = 1."""
        if math.gcd(a, self.order) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        return Cyclotomic(self.order, {k * a % self.order: c for k, c in self.coeffs})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1) if self.order > 2 else self

    def norm(self) -> Fraction:
        """Field norm from Q(zeta_order) down to Q."""
        prod = ONE
        for a in range(1, max(self.order, 2)):
            if math.gcd(a, self.order) == 1:
                prod = prod * self.galois(a)
        r = prod.as_rational()
        assert r is not None
        return r

    def inverse(self) -> "Cyclotomic":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return Cyclotomic.rational(1 / Fraction(self.coeffs[0][1]))
        others = ONE
        for a in range(2, self.order):
            if math.gcd(a, self.order) == 1:
                others = others * self.galois(a)
        n = (self * others).as_rational()
        return others * (1 / n)

    def __truediv__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = ONE, self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def sort_key(self):
        """Deterministic total order: descending real part, then imaginary part."""
        z = self.to_complex()
        return (-round(z.real, 9), -round(z.imag, 9), self.order, self.coeffs)

    # -- numerics ---------------------------------------------------------
    def to_complex(self) -> complex:
        n = self.order
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in self.coeffs),
            0j,
        )

    def sign(self) -> int:
        """Sign of a real element; raises MarginError if undecidable."""
        r = self.as_rational()
        if r is not None:
            return (r > 0) - (r < 0)
        z = self.to_complex()
        if abs(z.imag) > SIGN_MARGIN:
            raise ValueError("sign of a non-real number")
        if abs(z.real) <= SIGN_MARGIN:
            raise MarginError(f"value {z.real!r} within sign margin")
        return 1 if z.real > 0 else -1

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[k, str(Fraction(c))] for k, c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        return cls(data["order"], [(k, Fraction(c)) for k, c in data["coeffs"]])

    def __repr__(self):
        if self.order == 1:
            return f"Cyclotomic({Fraction(self.coeffs[0][1]) if self.coeffs else 0})"
        return f"Cyclotomic({self.order}, {dict(self.coeffs)})"

    def __str__(self):
        if self.order == 1:
            return str(Fraction(self.coeffs[0][1]) if self.coeffs else 0)
        terms = []
        for k, c in self.coeffs:
            c = Fraction(c)
            mono = "1" if k == 0 else f"z{self.order}^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_coeff(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not a rational coefficient: {c!r}")


def as_cyclotomic(x):
    """Coerce ints, Fractions and Cyclotomics; NotImplemented otherwise."""
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Cyclotomic.rational(x)
    return NotImplemented


ZERO = Cyclotomic(1, {}, _canon=True)
ONE = Cyclotomic(1, {0: 1}, _canon=True)


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    return Cyclotomic(n, {k % n: 1})


def is_rational(a: Cyclotomic) -> bool:
    return a.is_rational()


def as_rational(a: Cyclotomic):
    return a.as_rational()


def to_complex(a: Cyclotomic) -> complex:
    return a.to_complex()


def linear_combination(terms, order_hint: int | None = None) -> Cyclotomic:
    """sum of c * x for (c, x) in terms with one final canonicalization.

    Avoids re-canonicalizing after every addition, which dominates inner
    products of long class functions.
    """
    terms = [(c, as_cyclotomic(x)) for c, x in terms]
    big = order_hint or 1
    for _, x in terms:
        if x.coeffs:
            big = math.lcm(big, x.order)
    acc: dict[int, object] = {}
    for c, x in terms:
        if not c:
            continue
        s = big // x.order
        for k, a in x.coeffs:
            kk = k * s
            acc[kk] = acc.get(kk, 0) + c * a
    return Cyclotomic(big, acc)


def dot(a, b, weights=None) -> Cyclotomic:
    """sum_i w_i * a_i * b_i, canonicalized once."""
    a = [as_cyclotomic(x) for x in a]
    b = [as_cyclotomic(x) for x in b]
    big = 1
    for x in a + b:
        if x.coeffs:
            big = math.lcm(big, x.order)
    acc: dict[int, object] = {}
    for i, (x, y) in enumerate(zip(a, b)):
        if not x.coeffs or not y.coeffs:
            continue
        w = 1 if weights is None else weights[i]
        sx, sy = big // x.order, big // y.order
        for kx, cx in x.coeffs:
            kx *= sx
            cxw = cx * w
            for ky, cy in y.coeffs:
                k = (kx + ky * sy) % big
                acc[k] = acc.get(k, 0) + cxw * cy
    return Cyclotomic(big, acc)
