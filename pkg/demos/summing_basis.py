"""The summing basis of c0: democratic on positive indicators, far from quasi-greedy."""

from greedylab import constant_estimate, democracy_table, parse_space

sp = parse_space("summing_c0")
tab = democracy_table(sp, 10)
for n, lo, hi, method in tab.rows():
    print(f"n={n:2d}  h_l={lo:.0f}  h_r={hi:.0f}  ({method})")
for N in (8, 16, 32, 64):
    est = constant_estimate(sp, "quasi_greedy", N=N)
    print(f"quasi-greedy lower bound at horizon {N:2d}: {est.value:.6f}")
