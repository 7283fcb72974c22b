"""Regenerate src/multbound/data/families.json.

Classical types come from Lusztig symbols; G2 is entered by hand from
Carter, Finite Groups of Lie Type, section 13.9.  Within a 4-element S2
family the special symbol takes (1,0) and the symbol of larger defect takes
(2,1); the remaining two take (1,1), (2,0) in symbol order.  The S2 matrix is
invariant under swapping those two labels, so no bound depends on that
choice.
"""

import json
from pathlib import Path

from multbound.symbols import bipartition_label, is_special, symbol_families, symbols_b, symbols_d

OUT = Path(__file__).resolve().parents[1] / "src" / "multbound" / "data" / "families.json"


def partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def type_a(n):
    fams = []
    for i, p in enumerate(partitions(n + 1)):
        lab = "".join(map(str, p))
        fams.append({"id": i, "gamma": "trivial", "special": 0,
                     "members": [{"label": lab, "principal": True, "phi": lab, "m": "(1,0)"}]})
    return fams


def classical(symbols, principal_defect):
    fams = []
    for i, idx in enumerate(symbol_families(symbols)):
        syms = [symbols[j] for j in idx]
        members = []
        for s in syms:
            principal = s.defect == principal_defect
            phi = bipartition_label(s) + s.mark if principal else None
            members.append({"label": phi if principal else str(s), "principal": principal, "phi": phi})
        if len(syms) == 1:
            members[0]["m"] = "(1,0)"
            fams.append({"id": i, "gamma": "trivial", "special": 0, "members": members})
            continue
        if len(syms) != 4:
            raise SystemExit(f"unexpected family size {len(syms)}")
        special = next(k for k, s in enumerate(syms) if is_special(s) and s.defect == principal_defect)
        cusp = max(range(4), key=lambda k: syms[k].defect)
        rest = sorted((k for k in range(4) if k not in (special, cusp)), key=lambda k: syms[k])
        for k, lab in zip([special, rest[0], rest[1], cusp], ["(1,0)", "(1,1)", "(2,0)", "(2,1)"]):
            members[k]["m"] = lab
        fams.append({"id": i, "gamma": "S2", "special": special, "members": members})
    return fams


def type_g2():
    single = lambda i, lab: {"id": i, "gamma": "trivial", "special": 0,
                             "members": [{"label": lab, "principal": True, "phi": lab, "m": "(1,0)"}]}
    m = [
        ("phi2,1", True, "(1,0)"),
        ("G2[1]", False, "(1,1)"),
        ("phi2,2", True, "(1,2)"),
        ("phi''1,3", True, "(2,0)"),
        ("G2[-1]", False, "(2,1)"),
        ("phi'1,3", True, "(3,0)"),
        ("G2[theta]", False, "(3,1)"),
        ("G2[theta^2]", False, "(3,2)"),
    ]
    big = {"id": 2, "gamma": "S3", "special": 0,
           "members": [{"label": l, "principal": p, "phi": l if p else None, "m": x} for l, p, x in m]}
    return [single(0, "phi1,0"), single(1, "phi1,6"), big]


def main():
    types = {f"A{n}": {"families": type_a(n)} for n in range(1, 6)}
    types["B2"] = {"families": classical(symbols_b(2), 1)}
    types["B3"] = {"families": classical(symbols_b(3), 1)}
    types["D4"] = {"families": classical(symbols_d(4), 0)}
    types["G2"] = {"families": type_g2()}
    data = {
        "version": 1,
        "note": "C_n shares the B_n table; 2A_n shares the A_n table.",
        "types": types,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
