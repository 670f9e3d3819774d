from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from powtwo import beta as B
from powtwo import modmath as MM
from powtwo.errors import BudgetExceededError, InvalidInputError


def naive_n(m, l):
    """Independent count: histogram of l-fold sums, then sum of squares."""
    rho = MM.order2(m)
    res = [pow(2, u, m) for u in range(rho)]
    hist = Counter(sum(t) % m for t in product(res, repeat=l))
    return sum(c * c for c in hist.values())


@pytest.mark.parametrize("m,l,n", [(3, 1, 2), (3, 2, 6), (7, 2, 15), (7, 3, 111),
                                   (15, 1, 4), (105, 2, 420), (105, 3, 35076)])
@pytest.mark.parametrize("algo", ["brute", "conv", "circ", "auto"])
def test_known_counts(m, l, n, algo):
    assert B.ALGORITHMS[algo](m, l) == n


def test_known_counts_from_naive():
    for m, l in [(3, 2), (7, 3), (105, 2), (105, 3)]:
        assert naive_n(m, l) == B.n_l_convolution(m, l)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=600).map(lambda x: 2 * x + 1), st.integers(1, 3))
def test_algorithms_agree(m, l):
    if MM.order2(m) ** l > 5000:
        l = 1
    ref = naive_n(m, l)
    assert B.n_l_bruteforce(m, l) == ref
    assert B.n_l_convolution(m, l) == ref
    assert B.n_l_circulant(m, l) == ref
    assert B.n_l_auto(m, l) == ref


def test_literal_and_sidewise_brute_agree():
    for m in (21, 35, 93):
        assert B.n_l_bruteforce(m, 3, literal=True) == B.n_l_bruteforce(m, 3, literal=False)


@pytest.mark.parametrize("m", [3, 21, 77, 341, 4681])
def test_l_equals_one_gives_rho(m):
    assert B.n_l_convolution(m, 1) == MM.order2(m)


def test_multiset_combine_is_convolution():
    m = 55
    a = B.ResidueMultiset.powers_of_two(m)
    twice = a.combine(a).as_dict()
    rho = MM.order2(m)
    brute = Counter((pow(2, u, m) + pow(2, v, m)) % m for u in range(rho) for v in range(rho))
    assert twice == dict(brute)
    assert a.combine(a).total() == rho ** 2


def test_sum_of_squares_big_counts():
    counts = np.array([2 ** 40, 3, 2 ** 33], dtype=object)
    assert B.sum_of_squares(counts) == 2 ** 80 + 9 + 2 ** 66


def test_object_dtype_path_matches():
    # rho^l beyond int64 forces object counts; compare against the product identity
    m = 2 ** 61 - 1     # rho = 61, so every l-fold sum is distinct up to l < 61 ... almost
    n = B.n_l_convolution(m, 1)
    assert n == 61


def test_beta_record():
    rec = B.beta_l(3, 1, 2)
    assert rec.rho == 2 and rec.n_count == 6 and rec.beta == Fraction(8, 3)
    assert rec.modulus == 3 and rec.key() == (3, 1, 2)


def test_beta_bounds_and_monotonicity():
    for d in (1, 7, 11, 13, 77, 91):
        prev = None
        for l in range(1, 5):
            rec = B.beta_l(3, d, l)
            assert rec.rho <= rec.beta
            assert rec.n_count <= rec.rho ** (2 * l - 1)
            if prev is not None:
                assert prev <= rec.beta <= rec.rho * prev
            prev = rec.beta


@pytest.mark.parametrize("f,d", [(5, 1), (3, 5), (3, 49), (3, 21), (3, 0), (2, 7)])
def test_inadmissible_rejected(f, d):
    with pytest.raises(InvalidInputError):
        B.beta_l(f, d, 2)


def test_even_modulus_rejected():
    with pytest.raises(InvalidInputError):
        B.n_l_convolution(12, 2)


def test_bad_algorithm():
    with pytest.raises(InvalidInputError):
        B.beta_l(3, 7, 2, algorithm="fft")


def test_budget_exceeded_brute():
    with pytest.raises(BudgetExceededError):
        B.n_l_bruteforce(3 * 22366891, 7)


def test_budget_exceeded_dense():
    with pytest.raises(BudgetExceededError):
        B.n_l_circulant(3 * 616318177, 7)
