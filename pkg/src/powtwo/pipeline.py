"""The exact/inexact split for c_{1,l}, c_{2,l} and the resulting c_{0,l}.

For f in {3, 15},

    c_{f,l} = sum_d mu^2(d) / (c(d) beta_l(fd))

over square-free d with prime factors > 5.  Terms with beta_l(fd) < M are
summed exactly as mu^2(d)/c(d) * (1/beta - 1/M); the rest is bounded
analytically through m1(x)/phi(m1(x)) and the constants c3, c3'.  Since
beta_l(fd) >= rho(fd) and 2^rho(fd) > fd, only d with rho(fd) < M and
fd < 2^M - 1 can have beta below M, and those are enumerated completely.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .beta import BetaRecord, beta_l
from .bounds import (DEFAULT_PREC, UpperBound, contexts, exp_up, frac_down, frac_up, gamma_bounds,
                     ln_up)
from .cache import BetaCache
from .constants import c3_bound, c3prime, c_reciprocal_d
from .errors import InvalidInputError, InvariantViolation
from .modmath import lcm, order2, primes_with_small_order

log = logging.getLogger(__name__)

LAMBDA0 = "0.8844473"
MAJOR_ARC_FACTOR = Fraction(9, 10)
MINOR_ARC_FACTOR = 15
# reference c0 values for l = 2..8, input to the minimum k' table
C0_TABLE = {2: "0.803", 3: "0.782", 4: "0.779", 5: "0.7773",
            6: "0.7772", 7: "0.77708", 8: "0.77707"}
INEXACT_LOG_FROM = 37
C3PRIME_UPTO = 99


@dataclass(frozen=True)
class AdmissibleModulus:
    f: int
    d: int
    rho_fd: int
    factor_primes: tuple[tuple[int, int], ...]

    @property
    def modulus(self) -> int:
        return self.f * self.d


def enumerate_admissible(f: int, M: int) -> list[AdmissibleModulus]:
    """Every square-free d (prime factors > 5) with f*d < 2^M - 1 and rho(fd) < M."""
    if f not in (3, 15):
        raise InvalidInputError(f"f must be 3 or 15, got {f}")
    if M < 2:
        raise InvalidInputError("M must be at least 2")
    primes = primes_with_small_order(M)
    limit = 2 ** M - 1
    out: list[AdmissibleModulus] = []

    def grow(start: int, d: int, order: int, chosen: tuple) -> None:
        out.append(AdmissibleModulus(f, d, order, chosen))
        for j in range(start, len(primes)):
            p, rp = primes[j]
            o = lcm(order, rp)
            if o < M and f * d * p < limit:
                grow(j + 1, d * p, o, chosen + ((p, rp),))

    rho_f = order2(f)
    if rho_f < M:
        grow(0, 1, rho_f, ())
    out.sort(key=lambda a: a.d)
    return out


@dataclass(frozen=True)
class AuditEntry:
    f: int
    d: int
    status: str     # included | excluded | pruned-level | pruned-divisor | omitted
    level: int      # the l at which the decision was made
    beta: Fraction | None = None
    reason: str = ""


@dataclass
class ExactResult:
    f: int
    l: int
    M: int
    total: Fraction
    records: list[BetaRecord]
    audit: list[AuditEntry]


def _compute(task: tuple[int, int, int]) -> BetaRecord:
    f, d, l = task
    return beta_l(f, d, l)


class _Runner:
    """Evaluates batches of beta tasks, through the cache and an optional pool."""

    def __init__(self, jobs: int = 1, cache: BetaCache | None = None):
        self.jobs = max(1, jobs)
        self.cache = cache
        self._pool = None

    def __enter__(self):
        if self.jobs > 1:
            self._pool = ProcessPoolExecutor(max_workers=self.jobs)
        return self

    def __exit__(self, *exc):
        if self._pool is not None:
            self._pool.shutdown()

    def run(self, tasks: list[tuple[int, int, int]]) -> list[BetaRecord]:
        results: dict[tuple, BetaRecord] = {}
        todo = []
        for t in tasks:
            hit = self.cache.get(*t) if self.cache is not None else None
            if hit is not None:
                results[t] = hit
            else:
                todo.append(t)
        t0 = time.perf_counter()
        if self._pool is not None and len(todo) > 1:
            fresh = list(self._pool.map(_compute, todo, chunksize=max(1, len(todo) // (4 * self.jobs))))
        else:
            fresh = [_compute(t) for t in todo]
        for t, r in zip(todo, fresh):
            results[t] = r
            log.info("beta_%d(%d*%d) = %s", t[2], t[0], t[1], r.beta)
        if todo:
            log.info("computed %d beta values in %.2fs", len(todo), time.perf_counter() - t0)
        if self.cache is not None and fresh:
            self.cache.put_many(fresh)
        return [results[t] for t in tasks]


def _proper_divisors(mod: AdmissibleModulus) -> list[int]:
    ps = [p for p, _ in mod.factor_primes]
    out = [1]
    for p in ps:
        out += [x * p for x in out]
    return [x for x in out if x != mod.d]


def exact_part(f: int, l: int, M: int, cache: BetaCache | None = None, jobs: int = 1,
               known: dict[tuple[int, int, int], BetaRecord] | None = None,
               runner: _Runner | None = None, include_unit: bool = True) -> ExactResult:
    """Exact sum over admissible d with beta_l(fd) < M of (1/beta - 1/M)/c(d).

    Levels j = 1..l are processed in order.  A modulus leaves at level j < l
    once beta_j(fd) >= M is proven, either computed or inherited from a
    divisor (beta_j(fd') <= beta_j(fd) for fd' | fd, which also covers 3d | 15d
    through `known`).  At the final level every surviving d is computed, so
    borderline moduli appear in the audit as computed-and-excluded.

    ``include_unit=False`` drops the d = 1 term; the defining sum includes it,
    the option exists to compare against reference figures that omit it.
    """
    if l < 1:
        raise InvalidInputError("l must be positive")
    mods = enumerate_admissible(f, M)
    known = dict(known or {})
    alive = {m.d: m for m in mods}
    audit: list[AuditEntry] = []
    if not include_unit:
        del alive[1]
        audit.append(AuditEntry(f, 1, "omitted", 0, None, "d = 1 omitted on request"))
    records: dict[int, BetaRecord] = {}
    own_runner = runner is None
    runner = runner or _Runner(jobs, cache)
    if own_runner:
        runner.__enter__()
    try:
        for j in range(1, l + 1):
            level_beta: dict[int, Fraction] = {}
            # waves by number of prime factors so divisors are settled first
            by_size: dict[int, list[AdmissibleModulus]] = {}
            for mod in alive.values():
                by_size.setdefault(len(mod.factor_primes), []).append(mod)
            for size in sorted(by_size):
                wave = sorted(by_size[size], key=lambda a: a.d)
                tasks = []
                for mod in wave:
                    if j < l:
                        hit = _divisor_prune(mod, j, M, level_beta, known)
                        if hit is not None:
                            audit.append(AuditEntry(f, mod.d, "pruned-divisor", j, None, hit))
                            del alive[mod.d]
                            continue
                    if j == 1:
                        rec = BetaRecord(f, mod.d, 1, mod.rho_fd, mod.rho_fd)
                        level_beta[mod.d] = rec.beta
                        records[mod.d] = rec
                        continue
                    tasks.append((f, mod.d, j))
                for rec in runner.run(tasks):
                    if rec.rho != alive[rec.d].rho_fd:
                        raise InvariantViolation(f"rho mismatch for {rec.key()}")
                    level_beta[rec.d] = rec.beta
                    records[rec.d] = rec
                    known[rec.key()] = rec
            for d in sorted(level_beta):
                if level_beta[d] >= M:
                    status = "excluded" if j == l else "pruned-level"
                    audit.append(AuditEntry(f, d, status, j, level_beta[d],
                                            f"beta_{j} >= {M}"))
                    del alive[d]
    finally:
        if own_runner:
            runner.__exit__(None, None, None)
    total = Fraction(0)
    kept = []
    for d in sorted(alive):
        rec = records[d]
        b = rec.beta
        if b >= M:
            raise InvariantViolation(f"d={d} survived with beta {b} >= {M}")
        total += c_reciprocal_d(d) * (1 / b - Fraction(1, M))
        kept.append(rec)
        audit.append(AuditEntry(f, d, "included", l, b))
    audit.sort(key=lambda a: (a.d, a.level))
    return ExactResult(f, l, M, total, kept, audit)


def _divisor_prune(mod, j, M, level_beta, known) -> str | None:
    for dd in _proper_divisors(mod):
        b = level_beta.get(dd)
        if b is not None and b >= M:
            return f"beta_{j}({mod.f}*{dd}) >= {M}"
    if mod.f == 15:
        for dd in _proper_divisors(mod) + [mod.d]:
            rec = known.get((3, dd, j))
            if rec is not None and rec.beta >= M:
                return f"beta_{j}(3*{dd}) >= {M}"
    return None


@lru_cache(maxsize=4)
def _c3_cached(prec: int) -> UpperBound:
    return c3_bound(prec=prec)


def _g_up(x: Fraction, prec: int) -> Decimal:
    """Upper bound on (1 + log(x/2)) / x, the tail integral of log(t/2)/t^2."""
    up, _, _ = contexts(prec)
    num = up.add(Decimal(1), ln_up(frac_down(x / 2, prec), prec) if x > 2 else Decimal(0))
    return up.divide(num, frac_down(x, prec))


def inexact_part(M, prec: int = DEFAULT_PREC, c3: UpperBound | None = None) -> UpperBound:
    """Upper bound on int_M^inf (sum_{beta(fd) <= x} mu^2(d)/c(d)) dx/x^2."""
    M = Fraction(M)
    if M < 4:
        raise InvalidInputError("inexact part needs M >= 4")
    up, _, _ = contexts(prec)
    c3 = c3 or _c3_cached(prec)
    c3p = c3prime(prec).value
    _, g_hi = gamma_bounds(prec)
    pref = up.multiply(up.divide(up.multiply(Decimal(8), c3.value), Decimal(15)), exp_up(g_hi, prec))
    if M > C3PRIME_UPTO:
        body = _g_up(M, prec)
        note = "(8 c3/15) e^gamma (1+log(M/2))/M"
    elif M >= INEXACT_LOG_FROM:
        g99 = _g_up(Fraction(C3PRIME_UPTO), prec)
        body = up.add(up.multiply(c3p, _g_up(M, prec)),
                      up.multiply(up.subtract(Decimal(1), c3p), g99))
        note = "(8 c3/15) e^gamma {c3'(g(M) - g(99)) + g(99)}"
    else:
        flat = up.multiply(up.multiply(c3p, ln_up(Decimal(INEXACT_LOG_FROM) / 2, prec)),
                           up.subtract(frac_up(1 / M, prec), frac_down(Fraction(1, INEXACT_LOG_FROM), prec)))
        head = UpperBound(up.multiply(pref, flat), pref.scaleb(-prec + 3), "", prec)
        rest = inexact_part(INEXACT_LOG_FROM, prec, c3)
        return (head + rest).with_note(f"flat bound on [{M}, 37] + tail from 37")
    v = up.multiply(pref, body)
    return UpperBound(v, v.scaleb(-prec + 3) + c3.error_budget * 2, note, prec)


@dataclass
class C0Report:
    l: int
    M1: int
    M2: int
    exact1: Fraction
    exact2: Fraction
    inexact1: UpperBound
    inexact2: UpperBound
    c1: UpperBound
    c2: UpperBound
    c0: UpperBound
    records: list[BetaRecord] = field(default_factory=list)
    audit: list[AuditEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def c0(l: int, M1: int = 37, M2: int = 39, cache: BetaCache | None = None, jobs: int = 1,
       prec: int = DEFAULT_PREC, include_unit: bool = True) -> C0Report:
    """Certified c_{0,l} = (75/32) c_{1,l} + (105/32) c_{2,l}."""
    with _Runner(jobs, cache) as runner:
        r1 = exact_part(3, l, M1, runner=runner, include_unit=include_unit)
        # beta_j(3d) >= M2 settles 15d at level j as well
        known = _level_records(r1)
        r2 = exact_part(15, l, M2, runner=runner, known=known, include_unit=include_unit)
    in1 = inexact_part(M1, prec)
    in2 = inexact_part(M2, prec)
    c1 = UpperBound.exact(r1.total, "exact part f=3", prec) + in1
    c2 = UpperBound.exact(r2.total, "exact part f=15", prec) + in2
    total = c1.scale(Fraction(75, 32)) + c2.scale(Fraction(105, 32))
    notes = [
        "inexact part for f=15 reuses the 8/15 prefactor of the f=3 bound",
        f"inexact part below M={INEXACT_LOG_FROM} uses the flat bound on [M, {INEXACT_LOG_FROM}]"
        if min(M1, M2) < INEXACT_LOG_FROM else "",
        "" if include_unit else "d = 1 term omitted from both exact parts",
    ]
    return C0Report(l, M1, M2, r1.total, r2.total, in1, in2,
                    c1.with_note(f"c1 = exact({M1}) + inexact({M1})"),
                    c2.with_note(f"c2 = exact({M2}) + inexact({M2})"),
                    total.with_note("c0 = 75/32 c1 + 105/32 c2"),
                    r1.records + r2.records, r1.audit + r2.audit, [n for n in notes if n])


def _level_records(res: ExactResult) -> dict:
    out = {}
    for a in res.audit:
        if a.beta is not None and a.status in ("excluded", "pruned-level"):
            # beta itself is what pruning needs; rebuild a record carrying it
            out[(res.f, a.d, a.level)] = _BetaOnly(res.f, a.d, a.level, a.beta)
    return out


@dataclass(frozen=True)
class _BetaOnly:
    f: int
    d: int
    l: int
    beta: Fraction


@dataclass(frozen=True)
class KPrimeResult:
    l: int
    kprime: int
    k: int
    c0: Fraction
    lambda0: Fraction
    margin: Fraction


def min_kprime(l: int, c0_value, lambda0=LAMBDA0) -> KPrimeResult:
    """Smallest k' >= 2l with 15 c0 lambda0^(k'-2l) < 0.9; k = k' + 2."""
    lam = Fraction(str(lambda0)) if not isinstance(lambda0, Fraction) else lambda0
    if not 0 < lam < 1:
        raise InvalidInputError("lambda0 must lie strictly between 0 and 1")
    if isinstance(c0_value, UpperBound):
        c = c0_value.as_fraction()
    else:
        c = Fraction(str(c0_value)) if not isinstance(c0_value, Fraction) else c0_value
    if c < 0:
        raise InvalidInputError("c0 must be nonnegative")
    e = 0
    term = MINOR_ARC_FACTOR * c
    while term >= MAJOR_ARC_FACTOR:
        term *= lam
        e += 1
    kp = 2 * l + e
    return KPrimeResult(l, kp, kp + 2, c, lam, MAJOR_ARC_FACTOR - term)


def table2(c0_values: dict[int, str] | None = None, lambda0=LAMBDA0) -> list[KPrimeResult]:
    vals = c0_values or C0_TABLE
    return [min_kprime(l, vals[l], lambda0) for l in sorted(vals)]
