"""Orders of 2 and the primes that have small order."""
from powtwo import modmath as MM

# The order of 2 modulo an odd m is the smallest r with 2^r = 1 (mod m).
for m in (7, 15, 105, 3 * 22366891):
    print(m, "->", MM.order2(m))

# It divides the Carmichael exponent, and the order of a divisor divides it
print(MM.order2(105) % MM.order2(21) == 0)

# Primes p with order r are exactly the primitive prime divisors of 2^r - 1,
# so factoring 2^r - 1 for r < M finds every such prime (no prime table needed).
print(MM.factorize(2 ** 36 - 1))
small = MM.primes_with_small_order(13)
print(small)

# How many primes above 5 have order below 64?  Largest of them?
allp = MM.primes_with_small_order(64)
print(len(allp), max(p for p, _ in allp))

# Factorizations above 2^64 are flagged when a factor is only a probable prime
print(MM.factorize(2 ** 89 - 1).certified)
