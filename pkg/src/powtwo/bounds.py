"""Certified upper bounds in decimal arithmetic with directed rounding.

Products and quotients use ROUND_CEILING (or ROUND_FLOOR for quantities that
end up in a denominator).  ``Context.exp`` and ``Context.ln`` are correctly
rounded to within half an ulp, so one extra ulp in the safe direction makes
them one-sided as well.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction

DEFAULT_PREC = 60

# 70 significant digits, truncated (so these are lower bounds; +1e-68 bounds above)
_PI = "3.141592653589793238462643383279502884197169399375105820974944592307816"
_GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677"
_TRUNC = Decimal("1e-68")


def contexts(prec: int = DEFAULT_PREC) -> tuple[Context, Context, Context]:
    """(upward, downward, nearest) contexts at the given precision."""
    if prec < 50:
        raise ValueError("certified arithmetic needs at least 50 digits")
    return (Context(prec=prec, rounding=ROUND_CEILING),
            Context(prec=prec, rounding=ROUND_FLOOR),
            Context(prec=prec, rounding=ROUND_HALF_EVEN))


def pi_bounds(prec: int = DEFAULT_PREC) -> tuple[Decimal, Decimal]:
    up, down, _ = contexts(prec)
    lo = down.plus(Decimal(_PI))
    hi = up.add(Decimal(_PI), _TRUNC)
    return lo, hi


def gamma_bounds(prec: int = DEFAULT_PREC) -> tuple[Decimal, Decimal]:
    up, down, _ = contexts(prec)
    return down.plus(Decimal(_GAMMA)), up.add(Decimal(_GAMMA), _TRUNC)


def exp_up(x: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    up, _, near = contexts(prec)
    return up.next_plus(near.exp(x))


def exp_down(x: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    _, down, near = contexts(prec)
    return down.next_minus(near.exp(x))


def ln_up(x: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    up, _, near = contexts(prec)
    return up.next_plus(near.ln(x))


def ln_down(x: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    _, down, near = contexts(prec)
    return down.next_minus(near.ln(x))


def pow_up(x: Decimal, y: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    """Upper bound on x**y for x > 0, y > 0."""
    up, _, _ = contexts(prec)
    return exp_up(up.multiply(y, ln_up(x, prec)), prec)


def frac_up(q: Fraction, prec: int = DEFAULT_PREC) -> Decimal:
    up, _, _ = contexts(prec)
    return up.divide(Decimal(q.numerator), Decimal(q.denominator))


def frac_down(q: Fraction, prec: int = DEFAULT_PREC) -> Decimal:
    _, down, _ = contexts(prec)
    return down.divide(Decimal(q.numerator), Decimal(q.denominator))


def ulp(x: Decimal, prec: int = DEFAULT_PREC) -> Decimal:
    if x == 0:
        return Decimal(0)
    return Decimal(1).scaleb(x.adjusted() - prec + 1)


def zeta2_up(prec: int = DEFAULT_PREC) -> Decimal:
    up, _, _ = contexts(prec)
    _, pi_hi = pi_bounds(prec)
    return up.divide(up.multiply(pi_hi, pi_hi), 6)


@dataclass(frozen=True)
class UpperBound:
    """A number certified to be >= the quantity it stands for.

    ``error_budget`` bounds how much directed rounding may have inflated
    ``value`` over the exact value of the same expression.
    """

    value: Decimal
    error_budget: Decimal = Decimal(0)
    note: str = ""
    prec: int = field(default=DEFAULT_PREC, compare=False)

    @classmethod
    def exact(cls, q: Fraction | int, note: str = "", prec: int = DEFAULT_PREC) -> "UpperBound":
        q = Fraction(q)
        v = frac_up(q, prec)
        return cls(v, v - frac_down(q, prec), note, prec)

    def _ctx(self, other=None):
        p = self.prec if other is None else max(self.prec, other.prec)
        return contexts(p)[0], p

    def __add__(self, other: "UpperBound") -> "UpperBound":
        up, p = self._ctx(other)
        v = up.add(self.value, other.value)
        err = up.add(up.add(self.error_budget, other.error_budget), ulp(v, p))
        return UpperBound(v, err, _join(self.note, other.note, "+"), p)

    def __mul__(self, other: "UpperBound") -> "UpperBound":
        """Product of two nonnegative bounds."""
        if self.value < 0 or other.value < 0:
            raise ValueError("bound product needs nonnegative factors")
        up, p = self._ctx(other)
        v = up.multiply(self.value, other.value)
        err = up.add(up.add(up.multiply(self.error_budget, other.value),
                            up.multiply(other.error_budget, self.value)), ulp(v, p))
        return UpperBound(v, err, _join(self.note, other.note, "*"), p)

    def scale(self, q: Fraction | int, note: str = "") -> "UpperBound":
        """Multiply by an exact nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("scale factor must be nonnegative")
        up, p = self._ctx()
        v = up.divide(up.multiply(self.value, Decimal(q.numerator)), Decimal(q.denominator))
        err = up.add(up.divide(up.multiply(self.error_budget, Decimal(q.numerator)),
                               Decimal(q.denominator)), 2 * ulp(v, p))
        return UpperBound(v, err, note or self.note, p)

    def add_exact(self, q: Fraction | int) -> "UpperBound":
        return self + UpperBound.exact(q, prec=self.prec)

    def with_note(self, note: str) -> "UpperBound":
        return UpperBound(self.value, self.error_budget, note, self.prec)

    def __lt__(self, other) -> bool:
        return Fraction(self.value) < _as_fraction(other)

    def __le__(self, other) -> bool:
        return Fraction(self.value) <= _as_fraction(other)

    def rounded(self, digits: int = 6) -> str:
        """Value rounded upward to `digits` decimals (still a valid upper bound)."""
        q = Decimal(1).scaleb(-digits)
        return str(self.value.quantize(q, rounding=ROUND_CEILING))

    def as_fraction(self) -> Fraction:
        return Fraction(self.value)

    def __str__(self):
        return self.rounded(8)


def _as_fraction(x) -> Fraction:
    """Exact rational value of a bound, Decimal, Fraction, int or decimal string."""
    if isinstance(x, UpperBound):
        return Fraction(x.value)
    if isinstance(x, float):
        raise TypeError("compare bounds against exact values, not floats")
    return Fraction(x)


def _join(a: str, b: str, op: str) -> str:
    if a and b:
        return f"({a}) {op} ({b})"
    return a or b
