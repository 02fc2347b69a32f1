"""Greedy classes strictly larger than approximation classes on an interleaved l1 + l2 sum."""

from greedylab import Weight, parse_space
from greedylab.verify import witness_nondemocracy

sp = parse_space("interleaved:1:2")
w = Weight.power(0.25)
print(" k  |A|  |B|   ||1_A||  ||1_B||     G/A   lower bound holds")
for k in (2, 3, 4, 5):
    r = witness_nondemocracy(sp, w, 2, k)
    print(f"{k:2d} {len(r.A):4d} {len(r.B):4d} {r.norm_A:9.3f} {r.norm_B:8.3f} {r.ratio:7.4f}   {r.lower_bound_holds}")
