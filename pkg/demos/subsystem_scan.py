"""Closed subsystems of the dual root system and the global constant M.

The bound maximizes M over Phi and every closed subsystem of the dual;
here is that scan for the rank-2 and rank-3 types with curated data.
"""

from multbound.bounds import BoundConfig, global_bound

for name in ["A2", "B2", "G2", "B3", "C3"]:
    rep = global_bound(name, BoundConfig(1))
    parts = ", ".join(f"{b['subsystem']}:{b['M']}" for b in rep.breakdown[1:])
    print(f"{name}: M={rep.M}, |W|={rep.weyl_order}, C/c={rep.C}, {rep.validity}")
    print(f"   subsystems of the dual with M: {parts}")
