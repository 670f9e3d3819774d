"""Local factors and certified Euler products."""
from powtwo import constants as C

# B(p, h) in closed form, checked against the Gauss-sum definition
for p, h in [(3, 1), (5, 15), (7, 7), (13, 2)]:
    print(p, h, C.local_B(p, h), round(C.local_B_oracle(p, h).real, 6))

# kappa(h) collects the factors at 3 and 5; it vanishes unless 3 | h
print([str(C.kappa(h)) for h in (1, 3, 15, 21)])

# 1/c(p) is exact and close to 1/p
for p in (7, 11, 101):
    print(p, C.c_reciprocal(p), float(C.c_reciprocal(p) * p))

# Certified upper bounds: finite product rounded upward, times a zeta(2) tail.
c4 = C.c4_bound()
print("c4 <=", c4, " note:", c4.note)
print("c3' =", C.c3prime_exact(), "<=", C.c3prime())

# The S(h) bound versus a truncated product with its enclosure
print(C.S_upper(15, c4), C.S_truncated(15, 10 ** 5))
