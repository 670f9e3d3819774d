"""Counting N_l(m) three ways and turning it into beta_l."""
import time

from powtwo import beta as B

# N_l(m) counts 2l-tuples of powers of two with sum(2^u) = sum(2^v) mod m.
# Tiny case by hand: powers of 2 mod 3 are {2, 1}; pair sums hit 0 twice,
# 1 and 2 once each, so N_2(3) = 2^2 + 1 + 1 = 6 and beta_2(3) = 16/6.
print(B.n_l_bruteforce(3, 2), B.beta_l(3, 1, 2).beta)

m, l = 3 * 7 * 13, 3
for name in ("brute", "conv", "circ", "auto"):
    t0 = time.perf_counter()
    n = B.ALGORITHMS[name](m, l)
    print(f"{name:5s} N_{l}({m}) = {n}  {time.perf_counter() - t0:.3f}s")

# The sparse route keeps (residue, count) pairs; watch the support grow per round
ms = B.ResidueMultiset.powers_of_two(m)
acc = ms
for r in range(2, 5):
    acc = acc.combine(ms)
    print(r, "terms:", len(acc), "of", m)

# beta grows with l but never faster than a factor rho per step
for l in range(1, 6):
    rec = B.beta_l(3, 91, l)
    print(l, rec.rho, float(rec.beta))

# A big one (about half a minute): 3 * 22366891 has order 78
# rec = B.beta_l(3, 22366891, 7); print(float(rec.beta))
