"""Multiplicity constants M_Phi, N_Phi and the bounds C = M * |W| * c(G,X).

All reports state "multiplicity <= C".  N_Phi is not effective; it is
configuration with a documented placeholder default, and every report
carries its validity threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fourier import FamilyDataUnavailable, c_phi_set
from .roots import CartanType, SubsystemRecord, build, closed_subsystems, classify_subsystem, dual_type, parse_type, weyl_order

__all__ = [
    "BoundConfig",
    "BoundReport",
    "coefficient_set",
    "m_phi",
    "n_phi",
    "bound_unipotent",
    "bound_series",
    "global_bound",
]

N_PHI_DEFAULT_FACTOR = 2


@dataclass
class BoundConfig:
    """c_gx is c(G,X); overrides are keyed by Cartan type strings such as 'F4'."""

    c_gx: int = 1
    n_phi_overrides: dict = field(default_factory=dict)
    coefficient_overrides: dict = field(default_factory=dict)
    c_is_estimate: bool = False

    def __post_init__(self):
        if not isinstance(self.c_gx, int) or self.c_gx < 1:
            raise ValueError("c_gx must be a positive integer")
        self.n_phi_overrides = {_key(k): int(v) for k, v in self.n_phi_overrides.items()}
        self.coefficient_overrides = {
            _key(k): frozenset(Fraction(x) for x in v) for k, v in self.coefficient_overrides.items()
        }
        for k, v in self.coefficient_overrides.items():
            if not v or min(v) <= 0:
                raise ValueError(f"coefficient override for {k} must be a non-empty set of positive rationals")


def _key(ct) -> str:
    ct = parse_type(ct)
    return str(CartanType(ct.canonical().components, ct.twist))


@dataclass
class BoundReport:
    type: str
    weyl_order: int
    M: Fraction
    N: int
    c_gx: int
    C: Fraction
    validity: str
    c_is_estimate: bool = False
    source: str = ""
    breakdown: list = field(default_factory=list)
    small_field_clause: str | None = None

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "weyl_order": self.weyl_order,
            "M": str(self.M),
            "N": self.N,
            "c_gx": self.c_gx,
            "C": str(self.C),
            "validity": self.validity,
            "c_is_estimate": self.c_is_estimate,
            "source": self.source,
            "breakdown": [dict(b) for b in self.breakdown],
            "small_field_clause": self.small_field_clause,
        }

    @classmethod
    def from_json(cls, d: dict) -> "BoundReport":
        return cls(
            d["type"], d["weyl_order"], Fraction(d["M"]), d["N"], d["c_gx"], Fraction(d["C"]),
            d["validity"], d["c_is_estimate"], d["source"], [dict(b) for b in d["breakdown"]],
            d["small_field_clause"],
        )


def coefficient_set(ct, cfg: BoundConfig | None = None) -> frozenset[Fraction]:
    """C_Phi from overrides or curated data, multiplied over components."""
    cfg = cfg or BoundConfig()
    ct = parse_type(ct)
    whole = _key(ct)
    if whole in cfg.coefficient_overrides:
        return cfg.coefficient_overrides[whole]
    if ct.twist in (2, 3):
        return c_phi_set(ct)
    acc = frozenset({Fraction(1)})
    for comp in ct.canonical().components:
        k = _key(CartanType((comp,)))
        part = cfg.coefficient_overrides.get(k)
        if part is None:
            part = c_phi_set(CartanType((comp,)))
        acc = frozenset(a * b for a in acc for b in part)
    return acc


def m_phi(ct, cfg: BoundConfig | None = None) -> Fraction:
    """max 1/gamma over C_Phi."""
    return max(1 / g for g in coefficient_set(ct, cfg))


def n_phi(ct, cfg: BoundConfig | None = None) -> int:
    """Override, else 0 for type A, else the placeholder 2|W|."""
    cfg = cfg or BoundConfig()
    ct = parse_type(ct)
    k = _key(ct)
    if k in cfg.n_phi_overrides:
        return cfg.n_phi_overrides[k]
    if all(letter == "A" for letter, _ in ct.components):
        return 0
    return N_PHI_DEFAULT_FACTOR * weyl_order(ct)


def _validity(N: int) -> str:
    return "valid for all finite fields with q > %d" % N


def bound_unipotent(ct, cfg: BoundConfig) -> BoundReport:
    """Unipotent constituents: C = M_Phi * |W| * c."""
    ct = parse_type(ct)
    M = m_phi(ct, cfg)
    W = weyl_order(ct)
    N = n_phi(ct, cfg)
    return BoundReport(str(ct), W, M, N, cfg.c_gx, M * W * cfg.c_gx, _validity(N), cfg.c_is_estimate, "bound_unipotent")


def _subsystem_type(sub) -> CartanType:
    if isinstance(sub, SubsystemRecord):
        return sub.cartan_type
    return parse_type(sub)


def bound_series(ct, sub, cfg: BoundConfig) -> BoundReport:
    """Lusztig series with centralizer root system sub (in the dual): M_sub * |W(Phi)| * c."""
    ct = parse_type(ct)
    st = _subsystem_type(sub)
    M = m_phi(st, cfg)
    W = weyl_order(ct)
    N = n_phi(st, cfg)
    rep = BoundReport(str(ct), W, M, N, cfg.c_gx, M * W * cfg.c_gx, _validity(N), cfg.c_is_estimate, "bound_series")
    rep.breakdown = [{"subsystem": str(st), "M": str(M), "N": N}]
    return rep


def global_bound(ct, cfg: BoundConfig) -> BoundReport:
    """Max of M over Phi and all closed subsystems of the dual root system."""
    ct = parse_type(ct)
    untwisted = CartanType(ct.components)
    dual = dual_type(untwisted)
    rs = build(dual)
    entries = [("Phi", ct)]
    for rec in closed_subsystems(rs):
        entries.append((rec.label, rec.cartan_type))
    breakdown = []
    for label, st in entries:
        breakdown.append({"subsystem": label, "type": str(st), "M": m_phi(st, cfg), "N": n_phi(st, cfg)})
    M = max(b["M"] for b in breakdown)
    N = max(b["N"] for b in breakdown)
    W = weyl_order(ct)
    for b in breakdown:
        b["M"] = str(b["M"])
    clause = (
        f"fields with q <= {N} are not covered: the bound there is the maximum of the "
        "finitely many multiplicities for |F| <= N, left unevaluated"
        if N > 0
        else None
    )
    return BoundReport(
        str(ct), W, M, N, cfg.c_gx, M * W * cfg.c_gx, _validity(N), cfg.c_is_estimate, "global_bound",
        breakdown, clause,
    )
