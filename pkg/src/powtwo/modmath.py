"""Exact modular arithmetic around the multiplicative order of 2.

Everything here is pure and deterministic (the rho method is seeded), so the
functions are safe to call from worker processes or threads.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import InvalidInputError, RangeError

FACTOR_LIMIT = 2 ** 96
MAX_ORDER_CUTOFF = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
# Deterministic for n < 3.3e24 with these bases; we only claim n < 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA_ROUNDS = 32
_TRIAL_BOUND = 10_000


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]
    # False when some prime factor is >= 2**64 and only passed probabilistic rounds.
    certified: bool = True

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise InvalidInputError(f"malformed factor list {self.factors}")
            last = p
            prod *= p ** e
        if prod != self.value:
            raise InvalidInputError(f"factors of {self.value} recompose to {prod}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def totient(self) -> int:
        phi = 1
        for p, e in self.factors:
            phi *= (p - 1) * p ** (e - 1)
        return phi

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@dataclass(frozen=True)
class OrderRecord:
    modulus: int
    order: int

    def __post_init__(self):
        if pow(2, self.order, self.modulus) != 1 % self.modulus:
            raise InvalidInputError(f"2^{self.order} != 1 mod {self.modulus}")


def powmod(base: int, exponent: int, modulus: int) -> int:
    if modulus < 1:
        raise InvalidInputError("modulus must be positive")
    if exponent < 0:
        raise InvalidInputError("exponent must be nonnegative")
    return pow(base, exponent, modulus)


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 2**64.

    Above 2**64 a fixed set of extra pseudo-random bases is added; use
    :func:`is_certified_prime` to know which regime applied.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if not _miller_rabin(n, _MR_BASES):
        return False
    if n < 2 ** 64:
        return True
    rng = random.Random(n)
    return _miller_rabin(n, [rng.randrange(2, n - 1) for _ in range(_MR_EXTRA_ROUNDS)])


def is_certified_prime(n: int) -> bool:
    return n < 2 ** 64 and is_prime(n)


def _brent(n: int, seed: int) -> int:
    """Return a nontrivial factor of the odd composite n (Brent's rho variant)."""
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    f = _brent(n, seed=n & 0xFFFF)
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Complete factorization of 1 <= n <= FACTOR_LIMIT.

    Trial division removes factors below 10^4, Brent's rho splits the rest.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"cannot factor {n!r}")
    if n > FACTOR_LIMIT:
        raise RangeError(f"{n} exceeds the factoring limit 2^96")
    found: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    p = 7
    # 6k +/- 1 wheel
    step = 4
    while p < _TRIAL_BOUND and p * p <= m:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    if m > 1:
        _split(m, found)
    factors = tuple(sorted(found.items()))
    return Factorization(n, factors, certified=all(q < 2 ** 64 for q, _ in factors))


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def lcm(*values: int) -> int:
    return reduce(_lcm, values, 1)


@lru_cache(maxsize=65536)
def _order_int(m: int) -> int:
    fac = factorize(m)
    # Carmichael exponent of (Z/mZ)^* for odd m
    exponent = lcm(*((p - 1) * p ** (e - 1) for p, e in fac.factors))
    order = exponent
    for q, _ in factorize(exponent).factors:
        while order % q == 0 and pow(2, order // q, m) == 1:
            order //= q
    return order


def mult_order2(m: int) -> OrderRecord:
    """Multiplicative order of 2 modulo the odd integer m > 1."""
    if not isinstance(m, int) or m <= 1 or m % 2 == 0:
        raise InvalidInputError(f"order of 2 needs an odd modulus > 1, got {m!r}")
    return OrderRecord(m, _order_int(m))


def order2(m: int) -> int:
    """Shorthand returning just the order; accepts m = 1 (order 1)."""
    if m == 1:
        return 1
    return mult_order2(m).order


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise InvalidInputError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def _primitive_primes(k: int) -> tuple[int, ...]:
    """Primes p with order of 2 exactly k (all of them divide 2^k - 1)."""
    n = 2 ** k - 1
    if n > FACTOR_LIMIT:
        raise RangeError(f"2^{k} - 1 exceeds the factoring limit")
    # strip primes already explained by smaller orders d | k
    for d in range(2, k):
        if k % d == 0:
            for p in _primitive_primes(d):
                while n % p == 0:
                    n //= p
    return tuple(p for p in factorize(n).primes if _order_int(p) == k)


def primes_with_small_order(M: int, max_cutoff: int = MAX_ORDER_CUTOFF) -> list[tuple[int, int]]:
    """All primes p > 5 with ord_p(2) < M, as (p, order) sorted by order then p.

    Complete by construction: ord_p(2) = k forces p | 2^k - 1, and every such
    number is fully factored.
    """
    if M > max_cutoff:
        raise RangeError(f"order cutoff {M} above configured maximum {max_cutoff}")
    out = []
    for k in range(2, M):
        out.extend((p, k) for p in sorted(_primitive_primes(k)) if p > 5)
    return out
