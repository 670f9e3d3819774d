import math
from fractions import Fraction

import pytest

from powtwo import beta as B
from powtwo import constants as C
from powtwo import modmath as MM
from powtwo import pipeline as P
from powtwo.errors import InvalidInputError


def brute_admissible(f, M):
    return [d for d in range(1, (2 ** M - 2) // f + 1)
            if f * d < 2 ** M - 1 and math.gcd(d, 30) == 1
            and MM.factorize(d).is_squarefree() and MM.order2(f * d) < M]


def oracle_exact(f, l, M):
    """No pruning: compute beta_l for every enumerated d by tuple enumeration."""
    total = Fraction(0)
    for d in brute_admissible(f, M):
        m = f * d
        beta = Fraction(MM.order2(m) ** (2 * l), B.n_l_bruteforce(m, l))
        if beta < M:
            total += C.c_reciprocal_d(d) * (1 / beta - Fraction(1, M))
    return total


@pytest.mark.parametrize("f", [3, 15])
@pytest.mark.parametrize("M", [5, 9, 13, 16])
def test_enumeration_complete(f, M):
    assert [a.d for a in P.enumerate_admissible(f, M)] == brute_admissible(f, M)


def test_enumeration_m13():
    mods = P.enumerate_admissible(3, 13)
    # 3*73 and 3*127 fail on the order (lcm with 2), 91 = 7*13 and 341 = 11*31 pass
    assert [a.d for a in mods] == [1, 7, 11, 13, 17, 31, 91, 341]
    assert [a.rho_fd for a in mods] == [2, 6, 10, 12, 8, 10, 12, 10]
    assert len(P.enumerate_admissible(3, 37)) == 144
    assert len(P.enumerate_admissible(15, 39)) == 104


def test_enumeration_rejects():
    with pytest.raises(InvalidInputError):
        P.enumerate_admissible(5, 13)


def test_exact_part_tiny():
    assert P.exact_part(3, 1, 5).total == Fraction(3, 10)


@pytest.mark.parametrize("f,l,M", [(3, 2, 13), (3, 3, 13), (15, 2, 14), (3, 2, 16), (15, 3, 16)])
def test_exact_part_matches_unpruned_oracle(f, l, M):
    assert P.exact_part(f, l, M).total == oracle_exact(f, l, M)


def test_audit_m13():
    res = P.exact_part(3, 2, 13)
    status = {a.d: a.status for a in res.audit}
    assert status[1] == "included"
    assert sorted(d for d, s in status.items() if s != "included") == [
        d for d in brute_admissible(3, 13) if d != 1]
    assert len(res.audit) == 8


def test_audit_covers_every_modulus():
    res = P.exact_part(3, 3, 20)
    assert sorted({a.d for a in res.audit}) == [a.d for a in P.enumerate_admissible(3, 20)]
    for a in res.audit:
        if a.status in ("excluded", "pruned-level"):
            assert a.beta >= 20
        if a.status == "included":
            assert a.beta < 20


def test_pool_matches_serial():
    a = P.exact_part(3, 3, 25, jobs=1)
    b = P.exact_part(3, 3, 25, jobs=2)
    assert a.total == b.total and a.audit == b.audit


def test_inexact_part_values():
    assert P.inexact_part(37).rounded(8) == "0.13786475"
    assert P.inexact_part(39).rounded(8) == "0.13261941"
    vals = [P.inexact_part(M).value for M in (10, 20, 37, 39, 60, 99, 100, 200)]
    assert vals == sorted(vals, reverse=True)
    with pytest.raises(InvalidInputError):
        P.inexact_part(3)


def test_c0_formula():
    rep = P.c0(2, 13, 13)
    assert Fraction(rep.c1.value) >= rep.exact1 + Fraction(rep.inexact1.value) - Fraction(1, 10 ** 50)
    lhs = Fraction(75, 32) * Fraction(rep.c1.value) + Fraction(105, 32) * Fraction(rep.c2.value)
    assert Fraction(rep.c0.value) >= lhs
    assert Fraction(rep.c0.value) - lhs < Fraction(1, 10 ** 50)


def test_c0_monotone_in_M():
    vals = [P.c0(4, M, M).c0.value for M in (13, 20, 25)]
    assert vals[0] >= vals[1] >= vals[2]


def test_omit_unit_difference():
    full = P.c0(2, 20, 20)
    cut = P.c0(2, 20, 20, include_unit=False)
    b3 = B.beta_l(3, 1, 2).beta
    b15 = B.beta_l(15, 1, 2).beta
    unit1 = 1 / b3 - Fraction(1, 20) if b3 < 20 else 0
    unit2 = 1 / b15 - Fraction(1, 20) if b15 < 20 else 0
    assert full.exact1 - cut.exact1 == unit1
    assert full.exact2 - cut.exact2 == unit2
    assert any(a.status == "omitted" for a in cut.audit)


def test_min_kprime():
    r = P.min_kprime(2, "0.803")
    assert (r.kprime, r.k) == (26, 28)
    assert r.margin > 0
    # just one step earlier the inequality fails
    lam = Fraction("0.8844473")
    assert 15 * Fraction("0.803") * lam ** (r.kprime - 1 - 4) >= Fraction(9, 10)
    assert P.min_kprime(3, "0.01").kprime == 6
    with pytest.raises(InvalidInputError):
        P.min_kprime(2, "0.8", lambda0="1.2")


def test_table2():
    assert [r.kprime for r in P.table2()] == [26, 27, 29, 31, 33, 35, 37]
