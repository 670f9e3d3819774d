"""The exact/inexact split for c0 and the audit trail behind it."""
from fractions import Fraction

from powtwo import beta as B
from powtwo import pipeline as P

# Which 3d could possibly have beta_l(3d) < M?  Only those with order < M.
mods = P.enumerate_admissible(3, 13)
print([(a.d, a.rho_fd) for a in mods])

# Exact part at M = 13: every modulus gets a verdict in the audit
res = P.exact_part(3, 2, 13)
for a in res.audit:
    print(a.d, a.status, a.level, a.beta)
print("exact part:", res.total)

# Inexact tail bound shrinks as M grows
for M in (20, 37, 39, 120):
    print(M, P.inexact_part(M))

# Full cutoffs at l = 2 (a few seconds)
rep = P.c0(2, 37, 39)
print("c1 <=", rep.c1, " c2 <=", rep.c2, " c0 <=", rep.c0)

# The d = 1 term dominates: beta_2(3) = 8/3, so it alone contributes
unit = Fraction(75, 32) * (1 / B.beta_l(3, 1, 2).beta - Fraction(1, 37))
print("75/32 (3/8 - 1/37) =", float(unit))

# Leaving it out reproduces the smaller figures often quoted for this bound
print("without d = 1:", P.c0(2, 37, 39, include_unit=False).c0)
