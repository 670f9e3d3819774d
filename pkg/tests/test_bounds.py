from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest

from powtwo import bounds as BD
from powtwo.bounds import UpperBound

mpmath.mp.dps = 90


def mp(x):
    return mpmath.mpf(str(x))


def test_pi_and_gamma_enclosed():
    lo, hi = BD.pi_bounds(60)
    assert mp(lo) <= mpmath.pi <= mp(hi)
    lo, hi = BD.gamma_bounds(60)
    assert mp(lo) <= mpmath.euler <= mp(hi)


def test_precision_floor():
    with pytest.raises(ValueError):
        BD.contexts(40)


@pytest.mark.parametrize("x", ["0.5", "1", "2.718281828", "37", "1e-5", "123.456"])
def test_exp_ln_are_one_sided(x):
    d = Decimal(x)
    for prec in (50, 60, 80):
        assert mp(BD.exp_down(d, prec)) <= mpmath.exp(mp(d)) <= mp(BD.exp_up(d, prec))
        assert mp(BD.ln_down(d, prec)) <= mpmath.log(mp(d)) <= mp(BD.ln_up(d, prec))


def test_pow_and_zeta2():
    assert mpmath.zeta(2) ** mpmath.mpf("3.1") <= mp(BD.pow_up(BD.zeta2_up(), Decimal("3.1")))
    assert mpmath.pi ** 2 / 6 <= mp(BD.zeta2_up())


def test_fraction_rounding():
    q = Fraction(2, 3)
    assert BD.frac_down(q) < Fraction(2, 3) < BD.frac_up(q)


def test_upperbound_arithmetic_stays_above():
    a = UpperBound.exact(Fraction(1, 3))
    b = UpperBound.exact(Fraction(2, 7))
    assert Fraction((a + b).value) >= Fraction(1, 3) + Fraction(2, 7)
    assert Fraction((a * b).value) >= Fraction(2, 21)
    assert Fraction(a.scale(Fraction(75, 32)).value) >= Fraction(75, 96)
    s = a.add_exact(Fraction(1, 9))
    assert Fraction(s.value) >= Fraction(4, 9)
    # the inflation is within the budget
    assert Fraction((a + b).value) - (Fraction(1, 3) + Fraction(2, 7)) <= Fraction((a + b).error_budget)


def test_upperbound_compare_and_round():
    a = UpperBound.exact(Fraction(1, 3))
    assert a < "0.3334" and not a <= Fraction(1, 3)
    assert a.rounded(4) == "0.3334"
    assert str(a) == "0.33333334"
    with pytest.raises(TypeError):
        a < 0.5


def test_negative_product_rejected():
    with pytest.raises(ValueError):
        UpperBound(Decimal(-1)) * UpperBound(Decimal(1))
    with pytest.raises(ValueError):
        UpperBound(Decimal(1)).scale(-1)
