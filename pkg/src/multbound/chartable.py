"""Exact character tables by the Dixon-Schneider method.

Class-sum multiplication matrices are diagonalized simultaneously over a
prime field F_p with p = 1 mod exponent(G); each common eigenvector is a
central character, from which the irreducible character is recovered mod p
and then lifted to exact cyclotomic values through eigenvalue
multiplicities of each group element.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cyclotomic import Cyclotomic
from .groups import ClassFunction, FiniteGroup, inner_product

__all__ = [
    "CharacterTable",
    "LiftError",
    "character_table",
    "default_cache_dir",
    "set_cache_dir",
    "dixon_prime",
    "power_maps",
    "class_multiplication_coefficients",
]

CACHE_ENV = "MULTBOUND_CACHE"


class LiftError(RuntimeError):
    """Internal failure lifting modular characters (should not happen)."""


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    irreducibles: tuple[ClassFunction, ...]

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i) -> ClassFunction:
        return self.irreducibles[i]

    def __iter__(self):
        return iter(self.irreducibles)

    def degrees(self) -> list[int]:
        return [int(chi[0].as_rational()) for chi in self.irreducibles]

    def decompose(self, chi: ClassFunction) -> list:
        """Coefficients <chi, irr_i> for every irreducible."""
        return [inner_product(chi, psi) for psi in self.irreducibles]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 sqrt(order)."""
    bound = 2 * math.isqrt(order) + 2
    p = exponent + 1
    while p <= bound or not _is_prime(p):
        p += exponent
    return p


def power_maps(G: FiniteGroup) -> list[list[int]]:
    """pm[c][l] = class of g_c^l for 0 <= l < ord(g_c)."""
    cd = G.conjugacy()
    out = []
    ident = G.identity
    for r in cd.representatives:
        g = G.elements[r]
        row = [0]
        x = g
        while x != ident:
            row.append(cd.class_of[G.index[x]])
            x = tuple(g[i] for i in x)
        out.append(row)
    return out


def class_multiplication_coefficients(G: FiniteGroup) -> np.ndarray:
    """a[r, s, t] = #{x in C_r : x^-1 z_t in C_s} for z_t the rep of C_t."""
    cd = G.conjugacy()
    k = len(cd)
    a = np.zeros((k, k, k), dtype=np.int64)
    class_of = cd.class_of
    elems = G.elements
    index = G.index
    inv_elems = [elems[G.inverse_index(i)] for i in range(G.order)]
    for t, zt in enumerate(cd.representatives):
        z = elems[zt]
        for r, cls in enumerate(cd.classes):
            for xi in cls:
                xinv = inv_elems[xi]
                y = tuple(xinv[j] for j in z)
                a[r, class_of[index[y]], t] += 1
    return a


# -- linear algebra over F_p ------------------------------------------------


def _rref_columns(V: np.ndarray, p: int) -> np.ndarray:
    """Column space of V (k x d) in reduced column echelon form."""
    A = V.T.copy() % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(A[r:, c])[0]
        if len(piv) == 0:
            continue
        i = r + piv[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for j in range(rows):
            if j != r and A[j, c]:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        r += 1
    return A[:r].T.copy()


def _pivot_rows(V: np.ndarray) -> list[int]:
    out = []
    for j in range(V.shape[1]):
        out.append(int(np.nonzero(V[:, j])[0][0]))
    return out


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (columns) of {x : A x = 0} over F_p."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(A[r:, c])[0]
        if len(piv) == 0:
            continue
        i = r + piv[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for j in range(rows):
            if j != r and A[j, c]:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    N = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, c in enumerate(pivots):
            N[c, j] = (-A[i, f]) % p
    return N


def _charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod p via Hessenberg reduction.

    Returns coefficients, lowest degree first, monic.
    """
    n = A.shape[0]
    H = [[int(x) % p for x in row] for row in A]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        tinv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * tinv % p
            if not u:
                continue
            Hi, Hm = H[i], H[m]
            for j in range(n):
                Hi[j] = (Hi[j] - u * Hm[j]) % p
            for row in H:
                row[m] = (row[m] + u * row[i]) % p
    # p_m(x) = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    polys = [[1]]
    for m in range(n):
        prev = polys[-1]
        cur = [0] + prev[:]
        for j, c in enumerate(prev):
            cur[j] = (cur[j] - H[m][m] * c) % p
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = prod * H[i + 1][i] % p
            if not prod:
                break
            coef = H[i][m] * prod % p
            for j, c in enumerate(polys[i]):
                cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[-1]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _common_eigenvectors(a: np.ndarray, p: int) -> list[np.ndarray]:
    k = a.shape[0]
    spaces = [np.eye(k, dtype=np.int64)]
    done: list[np.ndarray] = []
    for r in range(1, k):
        if not spaces:
            break
        M = a[r] % p
        nxt = []
        for V in spaces:
            piv = _pivot_rows(V)
            A = (M @ V % p)[piv, :]
            roots = _roots_mod(_charpoly(A, p), p)
            d = V.shape[1]
            total = 0
            for lam in roots:
                N = _nullspace((A - lam * np.eye(d, dtype=np.int64)) % p, p)
                if N.shape[1] == 0:
                    continue
                total += N.shape[1]
                W = _rref_columns(V @ N % p, p)
                (done if W.shape[1] == 1 else nxt).append(W)
            if total != d:
                raise LiftError("class algebra not diagonalizable mod p")
        spaces = nxt
    if spaces:
        raise LiftError("eigenspaces did not split into lines")
    return done


def _sqrt_small(x: int, p: int, bound: int) -> int:
    for d in range(1, bound + 1):
        if d * d % p == x:
            return d
    raise LiftError("no small square root for the degree")


def _compute_table(G: FiniteGroup) -> list[list[Cyclotomic]]:
    cd = G.conjugacy()
    k = len(cd)
    n = G.order
    if k == 1:
        return [[Cyclotomic.rational(1)]]
    e = G.exponent()
    p = dixon_prime(n, e)
    a = class_multiplication_coefficients(G)
    vecs = _common_eigenvectors(a, p)
    sizes = cd.sizes
    inv_class = [cd.class_of[G.inverse_index(r)] for r in cd.representatives]
    pm = power_maps(G)
    # primitive e-th root of unity mod p
    g0 = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q, _ in _pfactors(p - 1)))
    zeta = pow(g0, (p - 1) // e, p)
    rows = []
    for v in vecs:
        v = v[:, 0] % p
        v = v * pow(int(v[0]), -1, p) % p
        theta = [int(v[t]) * pow(sizes[t], -1, p) % p for t in range(k)]
        s = sum(sizes[t] * theta[t] * theta[inv_class[t]] for t in range(k)) % p
        d = _sqrt_small(n * pow(s, -1, p) % p, p, math.isqrt(n))
        chi_mod = [d * th % p for th in theta]
        vals = []
        for c in range(k):
            o = len(pm[c])
            zo = pow(zeta, e // o, p)
            xs = [chi_mod[pm[c][l]] for l in range(o)]
            inv_o = pow(o, -1, p)
            mult = []
            for j in range(o):
                w = pow(zo, (-j) % o, p)
                acc, wl = 0, 1
                for l in range(o):
                    acc += xs[l] * wl
                    wl = wl * w % p
                m = acc % p * inv_o % p
                if m > d:
                    raise LiftError("eigenvalue multiplicity exceeds the degree")
                mult.append(m)
            if sum(mult) != d:
                raise LiftError("multiplicities do not sum to the degree")
            vals.append(Cyclotomic.from_multiplicities(o, mult))
        rows.append(vals)
    rows.sort(key=lambda r: (r[0].as_rational(), [x.sort_key() for x in r]))
    return rows


def _pfactors(n: int):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1
    if n > 1:
        out.append((n, 1))
    return out


def _cache_key(G: FiniteGroup) -> str:
    payload = json.dumps([G.degree, G.generators], separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:32]


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "multbound"))


_memo: dict[int, CharacterTable] = {}

# used when character_table is called without cache_dir; None disables the disk cache
ACTIVE_CACHE_DIR: Path | None = None


def set_cache_dir(path) -> None:
    global ACTIVE_CACHE_DIR
    ACTIVE_CACHE_DIR = None if path is None else Path(path)


def character_table(G: FiniteGroup, cache_dir: str | os.PathLike | None = None) -> CharacterTable:
    """Irreducible characters of G, ordered by degree then values.

    With ``cache_dir`` (or a directory set by ``set_cache_dir``) the table is
    read from / written to a JSON file keyed by a hash of the generator list.
    """
    hit = _memo.get(id(G))
    if hit is not None and hit.group is G:
        return hit
    rows = None
    path = None
    if cache_dir is None:
        cache_dir = ACTIVE_CACHE_DIR
    if cache_dir is not None:
        path = Path(cache_dir) / f"chartable-{_cache_key(G)}.json"
        if path.exists():
            data = json.loads(path.read_text())
            if data.get("order") == G.order and data.get("classes") == len(G.conjugacy()):
                rows = [[Cyclotomic.from_json(v) for v in row] for row in data["table"]]
    if rows is None:
        rows = _compute_table(G)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            data = {
                "degree": G.degree,
                "generators": G.generators,
                "order": G.order,
                "classes": len(G.conjugacy()),
                "table": [[v.to_json() for v in row] for row in rows],
            }
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(data))
            tmp.replace(path)
    table = CharacterTable(G, tuple(ClassFunction(G, r) for r in rows))
    _memo[id(G)] = table
    return table
