"""Exact and certified numerics for sums of four prime squares and powers of two.

Submodules: :mod:`modmath` (orders of 2, factoring), :mod:`beta` (N_l and
beta_l by three algorithms), :mod:`constants` (local factors, c3, c3', c4),
:mod:`pipeline` (c_{0,l} and minimum k'), :mod:`cache`, :mod:`report`,
:mod:`cli`.
"""

__version__ = "0.1.0"

from .beta import BetaRecord, beta_l, n_l_bruteforce, n_l_circulant, n_l_convolution
from .bounds import UpperBound
from .constants import c3_bound, c3prime, c4_bound, kappa, local_B
from .modmath import factorize, jacobi, mult_order2, primes_with_small_order
from .pipeline import c0, enumerate_admissible, min_kprime

__all__ = [
    "BetaRecord", "UpperBound", "beta_l", "c0", "c3_bound", "c3prime", "c4_bound",
    "enumerate_admissible", "factorize", "jacobi", "kappa", "local_B", "min_kprime",
    "mult_order2", "n_l_bruteforce", "n_l_circulant", "n_l_convolution",
    "primes_with_small_order",
]
