"""Error sequences and class quasi-norms of one vector across the space families."""

import math

import numpy as np

from greedylab import ClassParams, SparseVector, Weight, class_norms, error_profile, parse_space

f = SparseVector([1, 2, 3, 4, 6], [3.0, -2.0, 2.0, 0.5, -1.0])
params = ClassParams(Weight.power(0.25), 2)

for spec in ["lp:1", "lp:2", "lp:0.5", "lorentz_d:0.5:1", "interleaved:1:2", "summing_c0"]:
    sp = parse_space(spec)
    prof = error_profile(sp, f, len(f))
    cn = class_norms(sp, f, params, profile=prof)
    print(f"{spec:>16}  sigma={np.round(prof.sigma, 4).tolist()}")
    print(f"{'':>16}  gamma={np.round(prof.gamma, 4).tolist()}")
    print(f"{'':>16}  A={cn.a_norm:.4f}  CG={cn.cg_norm:.4f}  G={cn.g_norm:.4f}  G/A={cn.g_norm / cn.a_norm:.4f}")

g = SparseVector([1, 2, 3], [3.0, 2.0, 1.0])
a = class_norms(parse_space("lp:2"), g, ClassParams(Weight.power(0.5), math.inf)).a_norm
print(f"\nl2, w = sqrt(n), q = inf, f = (3, 2, 1): A = {a:.6f} (sqrt 14 + sqrt 5 = {math.sqrt(14) + math.sqrt(5):.6f})")
