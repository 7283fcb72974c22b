"""GL_2(F_q) as a brute-force check of the multiplicity bound.

For the three classical spherical spaces we estimate c(G,X) by point
counting, compute the bound C = M |W| c for type A1, and compare with the
exact multiplicities for several q.
"""

from multbound.bounds import BoundConfig, global_bound
from multbound.components import estimate_c_gx, naive_ratio_estimate
from multbound.gl2 import build_instance, make_space, multiplicities, verify_dl_bound

for space in ["flag", "split-torus", "torus-normalizer"]:
    series, est = estimate_c_gx(space, [2, 3, 4, 5])
    bound = global_bound("A1", BoundConfig(est.c, c_is_estimate=True))
    print(f"\n{space}")
    print("  counts of (X x G/B)_G:", series.points)
    print(f"  d={est.d}, extrapolated leading coefficient {est.leading} -> c={est.c}"
          f" (median ratio alone would give {naive_ratio_estimate(series, est.d)})")
    print(f"  bound C = {bound.M} * {bound.weyl_order} * {est.c} = {bound.C}")
    for q in [2, 3, 5, 7]:
        inst = build_instance(q)
        sp = make_space(inst, space)
        m = multiplicities(inst, sp)
        dl = verify_dl_bound(inst, sp, est.c)
        print(f"  q={q}: max multiplicity {max(m)}, max |<R_T(theta), pi>| = {dl.max_attained}")
