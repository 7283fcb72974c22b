"""Estimating c(G,X) from exact point counts of (X x G/B)_G over F_q.

(X x G/B)_G is the variety of triples (g, x, B') with g fixing x and B'.
Its F_q-point count grows like c q^d with c the number of top-dimensional
components.  For GL_2 the count is |G| times the number of G-orbits on
X x P^1, a polynomial in q, so the leading coefficient is recovered
exactly by extrapolating in u = 1/q rather than by a raw ratio.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

from .gl2 import SphericalSpace, build_instance, make_space

__all__ = [
    "CountSeries",
    "ComponentEstimate",
    "EnumerationCapError",
    "count_fixed_points",
    "count_fixed_points_naive",
    "estimate_components",
    "estimate_c_gx",
    "naive_ratio_estimate",
]

COUNT_CAP = 10**8


class EnumerationCapError(RuntimeError):
    """The requested count exceeds the enumeration cap."""


@dataclass
class CountSeries:
    points: list[tuple[int, int]]  # (q, count)

    def __post_init__(self):
        self.points = [(int(q), int(n)) for q, n in self.points]
        qs = [q for q, _ in self.points]
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ValueError("q values must be strictly increasing")
        if any(n < 0 for _, n in self.points):
            raise ValueError("counts must be nonnegative")

    def to_json(self) -> list:
        return [{"q": q, "count": n} for q, n in self.points]


@dataclass
class ComponentEstimate:
    d: int
    c: int
    residual: float
    confident: bool
    leading: Fraction | None = None  # extrapolated leading coefficient
    per_point: list = field(default_factory=list)  # count / q^d

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "c": self.c,
            "residual": self.residual,
            "confidence": "high" if self.confident else "low",
            "leading": None if self.leading is None else str(self.leading),
            "ratios": [str(r) for r in self.per_point],
        }


def count_fixed_points(space: SphericalSpace) -> int:
    """#{(g, x, B') : g x = x, g B' = B'} = sum over (x, B') of |Stab x cap Stab B'|.

    The sum over x collapses to |X| times the term at the base point, since
    G acts transitively on X.
    """
    inst = space.inst
    if space.size == 0:
        return 0
    flag = make_space(inst, "flag")
    if space.size * flag.size * inst.order > COUNT_CAP:
        raise EnumerationCapError("count exceeds the enumeration cap")
    H = set(space.stabilizer(0))
    total = sum(len(H & flag.stabilizer(b)) for b in range(flag.size))
    return space.size * total


def count_fixed_points_naive(space: SphericalSpace) -> int:
    """Triple loop over g, x, B' (oracle for small q)."""
    inst = space.inst
    if space.size == 0:
        return 0
    flag = make_space(inst, "flag")
    n = 0
    for g in range(inst.order):
        px = space.act(g)
        pb = flag.act(g)
        fx = sum(1 for i, j in enumerate(px) if i == j)
        fb = sum(1 for i, j in enumerate(pb) if i == j)
        n += fx * fb
    return n


def _extrapolate(pts: list[tuple[int, Fraction]]) -> Fraction:
    """Value at u = 0 of the interpolating polynomial through (1/q, r)."""
    acc = Fraction(0)
    us = [Fraction(1, q) for q, _ in pts]
    for i, (_, r) in enumerate(pts):
        w = Fraction(1)
        for j in range(len(pts)):
            if j != i:
                w *= us[j] / (us[j] - us[i])
        acc += w * r
    return acc


def naive_ratio_estimate(series: CountSeries, d: int) -> int:
    """Rounded median of count / q^d (kept for comparison)."""
    return round(statistics.median(Fraction(n, q**d) for q, n in series.points))


def _slope_dimension(pts) -> int:
    (q1, n1), (q2, n2) = pts[-2], pts[-1]
    if n1 == n2:
        return 0
    return round((math.log(n2) - math.log(n1)) / (math.log(q2) - math.log(q1)))


def _loo_estimates(pts, d):
    ratios = [(q, Fraction(n, q**d)) for q, n in pts]
    if len(ratios) < 3:
        return [_extrapolate(ratios)]
    return [_extrapolate(ratios[:i] + ratios[i + 1 :]) for i in range(len(ratios))]


def estimate_components(series: CountSeries) -> ComponentEstimate:
    """Fit count ~ c q^d.

    d starts from the rounded log-log slope of the two largest q and may move
    by one to the neighbour whose extrapolations agree best relative to
    their size.  c is the rounded median of leave-one-out polynomial
    extrapolations of count/q^d to q = infinity.  The estimate is confident
    when every extrapolation rounds to the same c and lies within 1/4 of it.
    """
    pts = series.points
    if len(pts) < 3:
        raise ValueError("need at least 3 data points")
    if all(n == 0 for _, n in pts):
        return ComponentEstimate(0, 0, 0.0, True, Fraction(0), [Fraction(0)] * len(pts))
    if any(n == 0 for _, n in pts):
        raise ValueError("counts must be positive for a nonempty variety")
    d0 = _slope_dimension(pts)
    best = None
    for d in (d0, d0 - 1, d0 + 1):
        if d < 0:
            continue
        ests = _loo_estimates(pts, d)
        mid = abs(statistics.median(ests))
        if mid < Fraction(1, 2):
            continue
        spread = (max(ests) - min(ests)) / mid
        if best is None or spread < best[0]:
            best = (spread, d, ests)
    if best is None:
        d = d0
        ests = _loo_estimates(pts, d)
    else:
        _, d, ests = best
    lead = statistics.median(ests)
    c = max(round(lead), 0)
    residual = float(max(abs(e - c) for e in ests))
    confident = c >= 1 and len({round(e) for e in ests}) == 1 and residual < 0.25
    ratios = [Fraction(n, q**d) for q, n in pts]
    return ComponentEstimate(d, c, residual, confident, Fraction(lead), ratios)


def estimate_c_gx(space_label: str, qs) -> tuple[CountSeries, ComponentEstimate]:
    pts = []
    for q in sorted(qs):
        inst = build_instance(q)
        pts.append((q, count_fixed_points(make_space(inst, space_label))))
    series = CountSeries(pts)
    return series, estimate_components(series)
