"""Runnable invariant suite behind ``powtwo verify``.

Each check returns a short detail string and raises AssertionError on
failure.  Long checks reproduce the headline c0 values and one beta_7 row.
"""
from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import beta as B
from . import constants as C
from . import modmath as MM
from . import pipeline as P

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _squarefree_odd(limit: int) -> list[int]:
    return [m for m in range(3, limit + 1, 2) if MM.factorize(m).is_squarefree()]


def check_orders() -> str:
    rng = random.Random(2024)
    for m in [rng.randrange(3, 10 ** 6, 2) for _ in range(2000)]:
        o = MM.mult_order2(m).order
        assert pow(2, o, m) == 1
        assert all(pow(2, o // q, m) != 1 for q in MM.factorize(o).primes)
        assert 2 ** o >= m + 1
    for _ in range(500):
        q1 = rng.randrange(3, 3000, 2)
        q = q1 * rng.randrange(1, 300, 2)
        assert MM.order2(q) % MM.order2(q1) == 0
    return "2000 random moduli, 500 divisor pairs"


def check_small_order_primes() -> str:
    from .sieve import primes_below
    M = 24
    brute = sorted((int(p), MM.order2(int(p))) for p in primes_below(10 ** 6)
                   if p > 5 and MM.order2(int(p)) < M)
    fast = sorted(MM.primes_with_small_order(M))
    assert [x for x in fast if x[0] < 10 ** 6] == brute
    return f"{len(brute)} primes below 10^6 with order < {M}"


def check_oracle_equality(limit: int = 500) -> str:
    ms = _squarefree_odd(limit)
    for m in ms:
        for l in (1, 2, 3):
            a = B.n_l_bruteforce(m, l)
            b = B.n_l_convolution(m, l)
            c = B.n_l_circulant(m, l)
            assert a == b == c, (m, l, a, b, c)
    return f"{len(ms)} moduli x l in 1..3"


def check_beta_bounds() -> str:
    for m in _squarefree_odd(301):
        rho = MM.order2(m)
        prev = None
        for l in (1, 2, 3, 4):
            n = B.n_l_convolution(m, l)
            beta = Fraction(rho ** (2 * l), n)
            assert n <= rho ** (2 * l - 1) and beta >= rho
            if l == 1:
                assert beta == rho
            if prev is not None:
                assert prev <= beta <= rho * prev
            prev = beta
    return "rho <= beta, N_l <= rho^(2l-1), beta_(l-1) <= beta_l <= rho beta_(l-1)"


def check_kappa_identity() -> str:
    for h in range(1, 1001):
        assert C.kappa(h) == C.kappa_from_local(h), h
    return "1 <= h <= 1000"


def check_gauss_oracle() -> str:
    worst = 0.0
    for p in [p for p in range(3, 98) if MM.is_prime(p)]:
        for h in range(-50, 51):
            z = C.local_B_oracle(p, h)
            worst = max(worst, abs(z - C.local_B(p, h)))
    assert worst < 1e-6
    return f"max deviation {worst:.2e}"


def check_local_inequalities() -> str:
    from .sieve import iter_primes
    for p in iter_primes(7, 10 ** 5 + 1):
        q = (p - 1) ** 4
        rc = C.c_reciprocal(p)
        assert rc * p <= Fraction(41, 10)
        assert 1 / rc < p - 1
        if p >= C.C4_TAIL_FROM:
            assert Fraction(C.a_of(p), q) * p * p <= Fraction(31, 10)
        if p >= C.C3_TAIL_FROM:
            assert (C.eps_factor(p) - 1) * p * p <= Fraction(744, 100)
    return "5 < p <= 10^5"


def check_m1() -> str:
    bad = [x for x in range(37, 61) if not C.m1_ratio_check(x)]
    assert not bad, bad
    return "37 <= x <= 60"


def check_enumeration() -> str:
    for f in (3, 15):
        for M in range(4, 15):
            fast = [a.d for a in P.enumerate_admissible(f, M)]
            brute = [d for d in range(1, (2 ** M - 1 + f - 1) // f)
                     if f * d < 2 ** M - 1 and math.gcd(d, 30) == 1
                     and MM.factorize(d).is_squarefree() and MM.order2(f * d) < M]
            assert fast == brute, (f, M)
    return "f in {3,15}, 4 <= M <= 14"


def check_constants() -> str:
    c4p = C.c4_partial()
    c4 = C.c4_bound()
    c3p = C.c3_partial()
    c3 = C.c3_bound()
    c3q = C.c3prime()
    assert c4p <= "0.97425" and c4 <= "0.9743"
    assert c3p <= "1.390399" and c3 <= "1.3904"
    assert c3q < "0.97336"
    return f"c4 <= {c4}, c3 <= {c3}, c3' <= {c3q}"


def check_table2() -> str:
    got = [r.kprime for r in P.table2()]
    assert got == [26, 27, 29, 31, 33, 35, 37], got
    return "k' = " + ", ".join(map(str, got))


def check_c0_reduced() -> str:
    vals = [P.c0(4, M, M).c0.value for M in (13, 20, 25)]
    assert vals[0] >= vals[1] >= vals[2]
    return "c0(4, M) for M = 13, 20, 25: " + ", ".join(str(v)[:10] for v in vals)


def check_c0_headline() -> str:
    r2 = P.c0(2, 37, 39)
    r3 = P.c0(3, 37, 39)
    detail = f"c0,2 <= {r2.c0}, c0,3 <= {r3.c0}"
    assert r2.c0 < "0.803" and r3.c0 < "0.782", detail
    return detail


def check_table1_row() -> str:
    rec = B.beta_l(3, 22366891, 7)
    got = float(rec.beta)
    assert abs(got - 3089168.27) <= 0.01, got
    return f"beta_7(3*22366891) = {got:.2f}"


DEFAULT_CHECKS = [
    ("order-of-2 invariants", check_orders),
    ("small-order prime completeness", check_small_order_primes),
    ("N_l oracle equality (m <= 500, l <= 3)", check_oracle_equality),
    ("beta bounds and monotonicity", check_beta_bounds),
    ("kappa identity", check_kappa_identity),
    ("B(p,h) vs Gauss sums", check_gauss_oracle),
    ("local factor inequalities", check_local_inequalities),
    ("m1 totient ratio", check_m1),
    ("admissible enumeration vs brute force", check_enumeration),
    ("c3, c3', c4 certified", check_constants),
    ("minimum k' table", check_table2),
    ("c0 monotone in M (l=4)", check_c0_reduced),
]

LONG_CHECKS = [
    ("c0 headline values (l=2,3; M=37,39)", check_c0_headline),
    ("beta_7(3*22366891)", check_table1_row),
]


def run_checks(long: bool = False) -> list[CheckResult]:
    out = []
    for name, fn in DEFAULT_CHECKS + (LONG_CHECKS if long else []):
        t0 = time.perf_counter()
        try:
            detail, ok = fn(), True
        except AssertionError as exc:
            detail, ok = f"FAILED: {exc}", False
        out.append(CheckResult(name, ok, detail))
        log.info("%s %s (%.1fs): %s", "PASS" if ok else "FAIL", name,
                 time.perf_counter() - t0, detail)
    return out
