"""Smallest k' with 15 c0 lambda0^(k' - 2l) < 0.9."""
from powtwo import pipeline as P

for r in P.table2():
    print(r.l, float(r.c0), r.kprime, r.k, float(r.margin))

# The same search on certified values computed here (l = 2 and 3)
for l in (2, 3):
    rep = P.c0(l, 37, 39)
    print(l, rep.c0, P.min_kprime(l, rep.c0).kprime)

# Sensitivity to lambda0
for lam in ("0.86", "0.8844473", "0.90"):
    print(lam, P.min_kprime(2, "0.803", lambda0=lam).kprime)
