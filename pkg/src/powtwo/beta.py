"""Exact counts N_l(m) of balanced power-of-two congruences and the ratio beta_l.

N_l(m) counts 2l-tuples (u_1..u_l, v_1..v_l) in [1, rho(m)]^{2l} with
sum 2^u_j == sum 2^v_j (mod m); beta_l(m) = rho(m)^{2l} / N_l(m).

Three independent routes compute N_l:

* :func:`n_l_bruteforce` enumerates exponent tuples explicitly.
* :func:`n_l_convolution` combines sparse residue multisets along the binary
  expansion of l.
* :func:`n_l_circulant` applies the residue transition operator l times to a
  dense count vector (the operator is circulant, so one row suffices).

All counts are exact integers; int64 is used only while the total mass
rho^l provably fits, object arrays of Python ints otherwise.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceededError, InvalidInputError
from .modmath import factorize, order2

log = logging.getLogger(__name__)

BRUTE_BUDGET = 10 ** 9          # explicit l-tuples per side
LITERAL_BUDGET = 2 * 10 ** 7    # full 2l-tuples for the literal enumeration
SPARSE_BUDGET = 6 * 10 ** 7     # live entries of a residue multiset
DENSE_BUDGET = 1 << 27          # length of a dense int64 count vector
DENSE_OBJECT_BUDGET = 1 << 21   # same, when counts need Python ints
PAIR_CHUNK = 1 << 22            # pairwise sums materialised at once
_INT64_MASS = 1 << 62


def power_residues(m: int) -> np.ndarray:
    """2^u mod m for u = 1..rho(m); pairwise distinct."""
    rho = order2(m)
    out = np.empty(rho, dtype=np.int64)
    x = 1
    for u in range(rho):
        x = 2 * x % m
        out[u] = x
    return out


def _count_dtype(rho: int, l: int):
    return np.int64 if rho ** l < _INT64_MASS else object


def sum_of_squares(counts: np.ndarray) -> int:
    """Exact sum of squares of a nonnegative integer array."""
    if counts.dtype == object:
        return sum(x * x for x in counts.tolist())
    if counts.size == 0:
        return 0
    top = int(counts.max())
    if top == 0:
        return 0
    if top < (1 << 31):
        # chunk so each partial dot stays below 2^63
        step = max(1, ((1 << 63) - 1) // (top * top))
        if step >= counts.size:
            return int(np.dot(counts, counts))
        if step >= 1024:
            return sum(int(np.dot(counts[i:i + step], counts[i:i + step]))
                       for i in range(0, counts.size, step))
    total = 0
    for i in range(0, counts.size, 1 << 20):
        total += sum(x * x for x in counts[i:i + (1 << 20)].tolist())
    return total


def _reduce_by_key(keys: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if keys.size == 0:
        return keys, weights
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    weights = weights[order]
    starts = np.concatenate(([0], np.flatnonzero(np.diff(keys)) + 1))
    return keys[starts], np.add.reduceat(weights, starts)


@dataclass
class ResidueMultiset:
    """Sparse map residue (mod `modulus`) -> count, stored as sorted parallel arrays."""

    modulus: int
    keys: np.ndarray
    counts: np.ndarray
    rounds: int = field(default=1)

    @classmethod
    def powers_of_two(cls, m: int, dtype=np.int64) -> "ResidueMultiset":
        keys = np.sort(power_residues(m))
        return cls(m, keys, np.ones(keys.size, dtype=dtype), rounds=1)

    def __len__(self):
        return int(self.keys.size)

    def total(self) -> int:
        return sum(self.counts.tolist())

    def as_dict(self) -> dict[int, int]:
        return {int(k): int(c) for k, c in zip(self.keys.tolist(), self.counts.tolist())}

    def combine(self, other: "ResidueMultiset") -> "ResidueMultiset":
        """Residue-sum convolution of two multisets (all pairs, counts multiplied)."""
        if other.modulus != self.modulus:
            raise InvalidInputError("cannot combine multisets with different moduli")
        m = self.modulus
        a_keys, a_counts, b_keys, b_counts = self.keys, self.counts, other.keys, other.counts
        if len(a_keys) < len(b_keys):
            a_keys, a_counts, b_keys, b_counts = b_keys, b_counts, a_keys, a_counts
        bound = min(m, len(a_keys) * len(b_keys))
        if bound > SPARSE_BUDGET:
            raise BudgetExceededError(f"residue multiset mod {m} would hold up to {bound} entries")
        dtype = object if object in (a_counts.dtype, b_counts.dtype) else np.int64
        rows = max(1, PAIR_CHUNK // max(1, len(b_keys)))
        part_keys, part_counts = [], []
        for i in range(0, len(a_keys), rows):
            ks = (a_keys[i:i + rows, None] + b_keys[None, :]) % m
            cs = np.multiply.outer(a_counts[i:i + rows], b_counts).astype(dtype, copy=False)
            k, c = _reduce_by_key(ks.ravel(), cs.ravel())
            part_keys.append(k)
            part_counts.append(c)
        keys, counts = _reduce_by_key(np.concatenate(part_keys), np.concatenate(part_counts))
        return ResidueMultiset(m, keys, counts, rounds=self.rounds + other.rounds)

    def to_dense(self) -> np.ndarray:
        vec = np.zeros(self.modulus, dtype=self.counts.dtype)
        vec[self.keys] = self.counts
        return vec


def _check_modulus(m: int, l: int) -> None:
    if not isinstance(m, int) or m < 1 or m % 2 == 0:
        raise InvalidInputError(f"modulus must be an odd positive integer, got {m!r}")
    if not isinstance(l, int) or l < 1:
        raise InvalidInputError(f"l must be a positive integer, got {l!r}")


def _tuple_sums(residues: np.ndarray, l: int, m: int):
    """Yield blocks of (sum of 2^u_j) mod m over all l-tuples, enumerated explicitly."""
    rho = residues.size
    head = np.zeros(1, dtype=np.int64)
    # enumerate the first l-1 coordinates eagerly while small
    depth = 0
    while depth < l - 1 and head.size * rho <= PAIR_CHUNK:
        head = ((head[:, None] + residues[None, :]) % m).ravel()
        depth += 1
    rest = l - depth
    if rest == 0:
        yield head
        return
    idx = np.zeros(rest - 1, dtype=np.int64)
    while True:
        offset = int(residues[idx].sum()) % m if rest > 1 else 0
        yield ((head[:, None] + (residues[None, :] + offset)) % m).ravel()
        # odometer over the remaining rest-1 coordinates
        j = rest - 2
        while j >= 0:
            idx[j] += 1
            if idx[j] < rho:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return


def n_l_bruteforce(m: int, l: int, literal: bool | None = None) -> int:
    """N_l(m) by explicit enumeration of exponent tuples.

    With ``literal=True`` every 2l-tuple is formed and tested (budget
    LITERAL_BUDGET). Otherwise each side's l-tuples are enumerated and tuples
    are paired by matching residue, which counts the same set of 2l-tuples.
    """
    _check_modulus(m, l)
    residues = power_residues(m) if m > 1 else np.zeros(1, dtype=np.int64)
    rho = residues.size
    if literal is None:
        literal = rho ** (2 * l) <= LITERAL_BUDGET
    if literal:
        if rho ** (2 * l) > LITERAL_BUDGET:
            raise BudgetExceededError(f"literal enumeration of {rho}^{2 * l} tuples")
        sums = np.concatenate(list(_tuple_sums(residues, l, m)))
        total = 0
        for i in range(0, sums.size, 256):
            total += int(np.count_nonzero(sums[i:i + 256, None] == sums[None, :]))
        return total
    if rho ** l > BRUTE_BUDGET:
        raise BudgetExceededError(f"enumeration of {rho}^{l} exponent tuples exceeds budget")
    hist = np.zeros(m, dtype=np.int64)
    for block in _tuple_sums(residues, l, m):
        hist += np.bincount(block, minlength=m)
    return sum_of_squares(hist)


def l_fold(m: int, l: int) -> ResidueMultiset:
    """The l-fold residue multiset via repeated squaring along the bits of l."""
    _check_modulus(m, l)
    rho = order2(m)
    base = ResidueMultiset.powers_of_two(m, dtype=_count_dtype(rho, l))
    result = None
    power = base
    bits = l
    while True:
        if bits & 1:
            result = power if result is None else result.combine(power)
        bits >>= 1
        if not bits:
            break
        power = power.combine(power)
    return result


def n_l_convolution(m: int, l: int) -> int:
    """N_l(m) from sparse residue multisets (sum of squared residue counts)."""
    if m == 1:
        _check_modulus(m, l)
        return 1
    return sum_of_squares(l_fold(m, l).counts)


def _dense_round(vec: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """One application of the circulant transition: out[r] = sum_k vec[r - s_k]."""
    m = vec.size
    out = np.zeros_like(vec)
    for s in shifts.tolist():
        if s == 0:
            out += vec
            continue
        out[s:] += vec[:m - s]
        out[:s] += vec[m - s:]
    return out


def _dense_budget(m: int, dtype) -> None:
    limit = DENSE_OBJECT_BUDGET if dtype == object else DENSE_BUDGET
    if m > limit:
        raise BudgetExceededError(f"dense count vector of length {m} exceeds budget {limit}")


def n_l_circulant(m: int, l: int) -> int:
    """N_l(m) from l applications of the residue transition operator to a dense vector."""
    _check_modulus(m, l)
    if m == 1:
        return 1
    shifts = power_residues(m)
    dtype = _count_dtype(shifts.size, l)
    _dense_budget(m, dtype)
    vec = np.zeros(m, dtype=dtype)
    vec[0] = 1
    for _ in range(l):
        vec = _dense_round(vec, shifts)
    return sum_of_squares(vec)


def n_l_auto(m: int, l: int) -> int:
    """N_l(m), sparse while the live support is small, dense once it saturates."""
    _check_modulus(m, l)
    if m == 1:
        return 1
    rho = order2(m)
    if rho ** l < m // 4 or m > DENSE_BUDGET:
        return n_l_convolution(m, l)
    dtype = _count_dtype(rho, l)
    cur = ResidueMultiset.powers_of_two(m, dtype=dtype)
    base = cur
    while cur.rounds < l and len(cur) * rho < m // 4:
        cur = cur.combine(base)
    _dense_budget(m, dtype)
    vec = cur.to_dense()
    shifts = power_residues(m)
    for r in range(cur.rounds, l):
        vec = _dense_round(vec, shifts)
        log.debug("mod %d: dense round %d/%d", m, r + 1, l)
    return sum_of_squares(vec)


ALGORITHMS = {
    "brute": n_l_bruteforce,
    "conv": n_l_convolution,
    "circ": n_l_circulant,
    "auto": n_l_auto,
}


@dataclass(frozen=True)
class BetaRecord:
    f: int
    d: int
    l: int
    rho: int
    n_count: int

    @property
    def modulus(self) -> int:
        return self.f * self.d

    @property
    def beta(self) -> Fraction:
        return Fraction(self.rho ** (2 * self.l), self.n_count)

    def key(self) -> tuple[int, int, int]:
        return (self.f, self.d, self.l)


def check_admissible(f: int, d: int) -> None:
    if f not in (3, 15):
        raise InvalidInputError(f"multiplier f must be 3 or 15, got {f}")
    if not isinstance(d, int) or d < 1:
        raise InvalidInputError(f"d must be a positive integer, got {d!r}")
    fac = factorize(d)
    if not fac.is_squarefree() or any(p <= 5 for p in fac.primes):
        raise InvalidInputError(f"d = {d} must be square-free with all prime factors > 5")


def beta_l(f: int, d: int, l: int, algorithm: str = "auto") -> BetaRecord:
    """Exact beta_l(f*d) for an admissible d."""
    check_admissible(f, d)
    if algorithm not in ALGORITHMS:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}")
    m = f * d
    n = ALGORITHMS[algorithm](m, l)
    return BetaRecord(f, d, l, order2(m), n)
