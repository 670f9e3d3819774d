"""Local factors of the singular series and certified Euler-product constants.

The local sum B(p, h) = sum_{a=1}^{p-1} |g(a;p) - 1|^4 e(ah/p) has a closed
form by cases on p mod 4 and p | h.  From it come a(p), b(p), the
multiplicative weight c(p) with 1 + 1/c(p) = (1 + b/(p-1)^4)/(1 + a/(p-1)^4),
the factor kappa(h) at {3, 5}, and the constants

    c4 = prod_{p>5} (1 + a(p)/(p-1)^4)
    c3 = prod_{p>5} (1 + 1/c(p)) / (1 + 1/(p-1))
    c3' = (1 - 1/101)(1 - 1/107)(1 - 1/131)

whose infinite tails are bounded by powers of zeta(2).
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import product

import numpy as np

from .bounds import (DEFAULT_PREC, UpperBound, contexts, exp_down, frac_up, gamma_bounds,
                     ln_down, pow_up, zeta2_up)
from .errors import BudgetExceededError, InvalidInputError, RangeError
from .modmath import factorize, is_prime, jacobi, mult_order2
from .sieve import first_primes, iter_primes, primes_below

C4_TAIL_EXPONENT = Decimal("3.1")
C3_TAIL_EXPONENT = Decimal("7.44")
C3_TAIL_FROM = 742
C4_TAIL_FROM = 103
C3_PRIME_COUNT = 10 ** 6
C3PRIME_PRIMES = (101, 107, 131)


def _odd_prime(p: int) -> None:
    if p <= 2 or not is_prime(p):
        raise InvalidInputError(f"{p} is not an odd prime")


def a_of(p: int) -> int:
    return -(p + 1) ** 2 if p % 4 == 3 else 3 * p * p - 2 * p - 1


def b_of(p: int) -> int:
    return (p - 1) * (p + 1) ** 2 if p % 4 == 3 else (p - 1) * (p * p + 6 * p + 1)


def local_B(p: int, h: int) -> int:
    """Closed form of the local exponential sum B(p, h)."""
    _odd_prime(p)
    divides = h % p == 0
    if p % 4 == 3:
        return (p - 1) * (p + 1) ** 2 if divides else -(p + 1) ** 2
    if divides:
        return (p - 1) * (p * p + 6 * p + 1)
    return -(p * p + 6 * p + 1) - 4 * p * (p + 1) * jacobi(h, p)


def local_B_oracle(p: int, h: int) -> complex:
    """B(p, h) summed directly from quadratic Gauss sums in floating point."""
    _odd_prime(p)
    if p > 200:
        raise InvalidInputError("Gauss-sum oracle limited to p <= 200")
    total = 0j
    for a in range(1, p):
        g = sum(cmath.exp(2j * math.pi * a * n * n / p) for n in range(p))
        total += abs(g - 1) ** 4 * cmath.exp(2j * math.pi * a * h / p)
    return total


@dataclass(frozen=True)
class LocalFactor:
    p: int
    a: int
    b: int
    c_recip: Fraction

    @classmethod
    def at(cls, p: int) -> "LocalFactor":
        return cls(p, a_of(p), b_of(p), c_reciprocal(p))


def c_reciprocal(p: int) -> Fraction:
    """Exact 1/c(p) for a prime p > 5."""
    if p <= 5:
        raise InvalidInputError("c(p) is defined for primes p > 5")
    _odd_prime(p)
    q = (p - 1) ** 4
    return Fraction(q + b_of(p), q + a_of(p)) - 1


def c_reciprocal_d(d: int) -> Fraction:
    """1/c(d) for square-free d with prime factors > 5 (multiplicative; 1/c(1) = 1)."""
    out = Fraction(1)
    for p, e in factorize(d).factors:
        if e > 1:
            raise InvalidInputError(f"{d} is not square-free")
        out *= c_reciprocal(p)
    return out


def eps_factor(p: int) -> Fraction:
    """1 + eps(p) = (1 + 1/c(p)) / (1 + 1/(p-1)), exactly."""
    q = (p - 1) ** 4
    return Fraction((q + b_of(p)) * (p - 1), (q + a_of(p)) * p)


def kappa(h: int) -> Fraction:
    if h == 0:
        raise InvalidInputError("kappa(h) needs h != 0")
    if h % 3:
        return Fraction(0)
    if h % 5:
        return Fraction(15 * (5 - 3 * jacobi(h, 5)), 32)
    return Fraction(45, 8)


def kappa_from_local(h: int) -> Fraction:
    """kappa(h) as the product of the local factors at p = 3 and p = 5."""
    return (1 + Fraction(local_B(3, h), 16)) * (1 + Fraction(local_B(5, h), 256))


def _product_up(num: np.ndarray | list, den: np.ndarray | list, prec: int) -> Decimal:
    up, _, _ = contexts(prec)
    acc = Decimal(1)
    for n, d in zip(num, den):
        acc = up.multiply(acc, up.divide(Decimal(n), Decimal(d)))
    return acc


def _one_minus_inv_square_up(primes, prec: int) -> Decimal:
    """Upper bound on prod (1 - 1/p^2) over the given primes."""
    up, _, _ = contexts(prec)
    acc = Decimal(1)
    for p in primes:
        p2 = p * p
        acc = up.multiply(acc, up.divide(Decimal(p2 - 1), Decimal(p2)))
    return acc


def c4_partial(cutoff: int = 100_000, prec: int = DEFAULT_PREC) -> UpperBound:
    """Upward-rounded prod_{5 < p < cutoff} (1 + a(p)/(p-1)^4)."""
    up, _, _ = contexts(prec)
    acc = Decimal(1)
    n = 0
    for p in iter_primes(7, cutoff):
        q = (p - 1) ** 4
        acc = up.multiply(acc, up.divide(Decimal(q + a_of(p)), Decimal(q)))
        n += 1
    return UpperBound(acc, 2 * n * acc.scaleb(-prec + 1),
                      f"prod over 5 < p < {cutoff}", prec)


def c4_bound(cutoff: int = 100_000, prec: int = DEFAULT_PREC) -> UpperBound:
    """Certified upper bound for c4 with a zeta(2)^3.1 tail beyond `cutoff`."""
    if cutoff < 100_000:
        raise InvalidInputError("c4 cutoff must be at least 100000")
    partial = c4_partial(cutoff, prec)
    up, _, _ = contexts(prec)
    small = primes_below(cutoff).tolist()
    tail_base = up.multiply(zeta2_up(prec), _one_minus_inv_square_up(small, prec))
    tail = pow_up(tail_base, C4_TAIL_EXPONENT, prec)
    tail_ub = UpperBound(tail, (len(small) + 8) * tail.scaleb(-prec + 2),
                         f"(zeta(2) prod_(p<{cutoff})(1-1/p^2))^3.1", prec)
    out = partial * tail_ub
    return out.with_note(f"c4 <= [{partial.note}] * [{tail_ub.note}]; tail valid for p >= {C4_TAIL_FROM}")


def c3_partial(n_primes: int = C3_PRIME_COUNT, prec: int = DEFAULT_PREC) -> UpperBound:
    """Upward-rounded prod (1 + eps(p)) over 5 < p <= p_{n_primes}."""
    up, _, _ = contexts(prec)
    primes = first_primes(n_primes).tolist()
    acc = Decimal(1)
    for p in primes[3:]:
        f = eps_factor(p)
        acc = up.multiply(acc, up.divide(Decimal(f.numerator), Decimal(f.denominator)))
    return UpperBound(acc, 2 * len(primes) * acc.scaleb(-prec + 1),
                      f"prod over 5 < p <= p_{n_primes} = {primes[-1]}", prec)


def c3_bound(n_primes: int = C3_PRIME_COUNT, prec: int = DEFAULT_PREC) -> UpperBound:
    """Certified upper bound for c3 with a zeta(2)^7.44 tail beyond the n-th prime."""
    if n_primes < 10 ** 6:
        raise InvalidInputError("c3 needs at least the first 10^6 primes")
    partial = c3_partial(n_primes, prec)
    up, _, _ = contexts(prec)
    primes = first_primes(n_primes).tolist()
    tail_base = up.multiply(zeta2_up(prec), _one_minus_inv_square_up(primes, prec))
    tail = pow_up(tail_base, C3_TAIL_EXPONENT, prec)
    tail_ub = UpperBound(tail, (len(primes) + 8) * tail.scaleb(-prec + 2),
                         f"(zeta(2) prod_(p<=p_{n_primes})(1-1/p^2))^7.44", prec)
    out = partial * tail_ub
    return out.with_note(f"c3 <= [{partial.note}] * [{tail_ub.note}]; tail valid for p >= {C3_TAIL_FROM}")


def c3prime_exact() -> Fraction:
    out = Fraction(1)
    for p in C3PRIME_PRIMES:
        out *= 1 - Fraction(1, p)
    return out


def c3prime(prec: int = DEFAULT_PREC) -> UpperBound:
    """(1 - 1/101)(1 - 1/107)(1 - 1/131); these primes have order of 2 above 99."""
    orders = {p: mult_order2(p).order for p in C3PRIME_PRIMES}
    if min(orders.values()) <= 99:
        raise RuntimeError(f"unexpected orders {orders}")
    q = c3prime_exact()
    return UpperBound.exact(q, note=f"c3' = {q} (orders {orders})", prec=prec)


def m1_primes(x: float) -> list[int]:
    """Prime divisors of m1(x) = prod_{e <= x/2} (2^{2e} - 1)."""
    emax = int(math.floor(x / 2))
    if emax > 30:
        raise RangeError("m1(x) is only factored for x <= 61")
    primes: set[int] = set()
    for e in range(1, emax + 1):
        primes.update(factorize(2 ** e - 1).primes)
        primes.update(factorize(2 ** e + 1).primes)
    return sorted(primes)


def m1_totient_ratio(x: float) -> Fraction:
    """m1(x) / phi(m1(x)) exactly."""
    out = Fraction(1)
    for p in m1_primes(x):
        out *= Fraction(p, p - 1)
    return out


def m1_ratio_check(x: float, prec: int = DEFAULT_PREC) -> bool:
    """Certify m1(x)/phi(m1(x)) <= e^gamma log(x/2); True only when proven."""
    if not 4 <= x <= 60:
        raise RangeError("m1 check supported for 4 <= x <= 60")
    _, down, _ = contexts(prec)
    g_lo, _ = gamma_bounds(prec)
    rhs = down.multiply(exp_down(g_lo, prec), ln_down(Decimal(str(x)) / 2, prec))
    ratio = m1_totient_ratio(x)
    return frac_up(ratio, prec) <= rhs


def u_bound(log2_d: float) -> float:
    """u(d) = e^gamma log log d + 2.5064 / log log d, given log2(d)."""
    ll = math.log(log2_d * math.log(2))
    return math.exp(0.5772156649015329) * ll + 2.5064 / ll


def S_upper(h: int, c4: UpperBound | None = None) -> UpperBound:
    """Upper bound c4 * kappa(h) * prod_{p > 5, p | h} (1 + 1/c(p))."""
    if h == 0:
        raise InvalidInputError("S(h) bound needs h != 0")
    k = kappa(h)
    if k == 0:
        return UpperBound(Decimal(0), Decimal(0), "kappa(h) = 0")
    c4 = c4 or c4_bound()
    factor = k
    for p in factorize(abs(h)).primes:
        if p > 5:
            factor *= 1 + c_reciprocal(p)
    return c4.scale(factor, note=f"c4 * {factor}")


def S_truncated(h: int, P0: int) -> tuple[float, float, float]:
    """Truncated Euler product for S(h): (value, lower, upper).

    Primes p <= P0 and every prime divisor of h are included exactly; the
    remaining factors lie in [1 - x_p, 1 + x_p] with x_p = (5p^2 + 6p + 1)/(p-1)^4 <= 7/p^2.
    """
    if h == 0:
        raise InvalidInputError("S(h) needs h != 0")
    if P0 < 30:
        raise InvalidInputError("truncation point must be >= 30")
    log_val = 0.0
    seen = set()
    for p in iter_primes(3, P0 + 1):
        f = 1 + local_B(p, h) / (p - 1) ** 4
        if f == 0:
            return 0.0, 0.0, 0.0
        log_val += math.log(f)
        seen.add(p)
    for p in factorize(abs(h)).primes:
        if p > 2 and p not in seen:
            log_val += math.log(1 + local_B(p, h) / (p - 1) ** 4)
    tail = 7.0 / (P0 - 1)            # >= sum_{n > P0} 7/n^2
    value = math.exp(log_val)
    return value, value * math.exp(-2 * tail), value * math.exp(tail)


def r_l_oracle(l: int, L: int) -> Counter:
    """r_l(h): representations of h as sum_j (2^u_j - 2^v_j), 4 <= u_j, v_j <= L."""
    if l < 1 or L < 4:
        raise InvalidInputError("need l >= 1 and L >= 4")
    if L > 12:
        raise InvalidInputError("r_l oracle supports L <= 12")
    if (L - 3) ** (2 * l) > 10 ** 9:
        raise BudgetExceededError(f"(L-3)^(2l) = {(L - 3) ** (2 * l)} tuples")
    powers = [2 ** e for e in range(4, L + 1)]
    side = Counter(sum(t) for t in product(powers, repeat=l))
    out: Counter = Counter()
    for su, cu in side.items():
        for sv, cv in side.items():
            out[su - sv] += cu * cv
    return out
