"""Lusztig symbols for the unipotent characters of types B_n, C_n and D_n.

A symbol is a pair of strictly increasing tuples (S, T).  Two symbols lie in
the same family exactly when, after shifting to a common number of entries,
their entries agree as multisets.  Used to generate and re-validate the
shipped family table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

__all__ = ["Symbol", "symbols_b", "symbols_d", "symbol_families", "bipartition_label"]


@dataclass(frozen=True, order=True)
class Symbol:
    S: tuple[int, ...]
    T: tuple[int, ...]
    mark: str = ""  # "+" / "-" on the two characters of a degenerate symbol

    @property
    def defect(self) -> int:
        return len(self.S) - len(self.T)

    @property
    def size(self) -> int:
        return len(self.S) + len(self.T)

    def rank(self) -> int:
        n = self.size
        return sum(self.S) + sum(self.T) - ((n - 1) // 2) ** 2 if n % 2 else (
            sum(self.S) + sum(self.T) - (n * n - 2 * n) // 4
        )

    def shift(self) -> "Symbol":
        return Symbol((0,) + tuple(s + 1 for s in self.S), (0,) + tuple(t + 1 for t in self.T), self.mark)

    def padded(self, total: int) -> "Symbol":
        out = self
        while out.size < total:
            out = out.shift()
        return Symbol(out.S, out.T, self.mark)

    def entries(self) -> tuple[int, ...]:
        return tuple(sorted(self.S + self.T))

    def __str__(self):
        return "[" + ",".join(map(str, self.S)) + "|" + ",".join(map(str, self.T)) + "]" + self.mark


def bipartition_label(sym: Symbol) -> str:
    """'alpha.beta' with parts in descending order, as in CHEVIE."""
    a = sorted((s - i for i, s in enumerate(sym.S)), reverse=True)
    b = sorted((t - i for i, t in enumerate(sym.T)), reverse=True)
    a = "".join(str(x) for x in a if x)
    b = "".join(str(x) for x in b if x)
    return f"{a}.{b}"


def _reduced(sym: Symbol) -> bool:
    return not (sym.S and sym.T and sym.S[0] == 0 and sym.T[0] == 0)


def _symbols(n: int, defect: int, top: int):
    """Reduced symbols of given rank and defect with entries < top."""
    out = []
    for m in range(0, n + 2):
        for S in combinations(range(top), m + defect):
            for T in combinations(range(top), m):
                sym = Symbol(S, T)
                if _reduced(sym) and sym.rank() == n:
                    out.append(sym)
    return out


def symbols_b(n: int) -> list[Symbol]:
    """Unipotent characters of B_n / C_n: odd positive defect."""
    out = []
    d = 1
    while d * d // 4 + (d * d - 1) // 4 <= 2 * n + 2:
        out.extend(_symbols(n, d, 2 * n + 2))
        d += 2
    return sorted(set(out), key=lambda s: (s.defect, s.S, s.T))


def symbols_d(n: int) -> list[Symbol]:
    """Unipotent characters of D_n: defect 0 mod 4, unordered; S = T twice."""
    out = []
    for sym in _symbols(n, 0, 2 * n + 2):
        if sym.S < sym.T:
            continue
        if sym.S == sym.T:
            out.extend([Symbol(sym.S, sym.T, "+"), Symbol(sym.S, sym.T, "-")])
        else:
            out.append(sym)
    d = 4
    while d * d // 4 <= 2 * n + 2:
        out.extend(_symbols(n, d, 2 * n + 2))
        d += 4
    return sorted(out, key=lambda s: (s.defect, s.S, s.T))


def symbol_families(symbols: list[Symbol]) -> list[list[int]]:
    """Indices of symbols grouped by shifted entry multiset."""
    total = max(s.size for s in symbols)
    total += (total - symbols[0].size) % 2
    groups: dict[tuple, list[int]] = {}
    for i, s in enumerate(symbols):
        groups.setdefault((s.padded(total).entries(), s.mark), []).append(i)
    return sorted(groups.values())


def singles(symbols: list[Symbol], family: list[int]) -> list[int]:
    total = max(symbols[i].size for i in family)
    c = Counter(symbols[family[0]].padded(total).entries())
    return sorted(k for k, v in c.items() if v == 1)


def is_special(sym: Symbol) -> bool:
    """Interlacing s0 <= t0 <= s1 <= ... (either orientation in type D)."""

    def interlaced(a, b):
        seq = []
        for i in range(len(a)):
            seq.append(a[i])
            if i < len(b):
                seq.append(b[i])
        return len(a) - len(b) in (0, 1) and all(x <= y for x, y in zip(seq, seq[1:]))

    return interlaced(sym.S, sym.T) or (sym.defect == 0 and interlaced(sym.T, sym.S))
