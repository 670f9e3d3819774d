"""Segmented sieve of Eratosthenes over numpy boolean blocks."""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

SEGMENT = 1 << 20


def primes_below(n: int) -> np.ndarray:
    """All primes p < n as an int64 array (plain sieve, odd-only)."""
    if n <= 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n // 2, dtype=bool)
    sieve[0] = False
    for i in range(1, (math.isqrt(n - 1) - 1) // 2 + 1):
        if sieve[i]:
            p = 2 * i + 1
            sieve[p * p // 2::p] = False
    odd = 2 * np.flatnonzero(sieve).astype(np.int64) + 1
    return np.concatenate(([2], odd)).astype(np.int64)


def prime_segments(lo: int, hi: int, segment: int = SEGMENT) -> Iterator[np.ndarray]:
    """Yield arrays of the primes in [lo, hi), one block of `segment` integers at a time."""
    lo = max(lo, 2)
    if hi <= lo:
        return
    base = primes_below(math.isqrt(hi - 1) + 1)
    start = lo
    while start < hi:
        stop = min(start + segment, hi)
        block = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, (start + p - 1) // p * p)
            block[first - start::p] = False
        if start < 2:
            block[: 2 - start] = False
        yield np.flatnonzero(block).astype(np.int64) + start
        start = stop


def iter_primes(lo: int, hi: int, segment: int = SEGMENT) -> Iterator[int]:
    for block in prime_segments(lo, hi, segment):
        yield from block.tolist()


def first_primes(count: int) -> np.ndarray:
    """The first `count` primes, sieving with the Rosser-Schoenfeld upper bound on p_n."""
    if count < 1:
        return np.zeros(0, dtype=np.int64)
    if count < 6:
        return np.array([2, 3, 5, 7, 11][:count], dtype=np.int64)
    ln = math.log(count)
    bound = int(count * (ln + math.log(ln))) + 1
    blocks = []
    have = 0
    for block in prime_segments(2, bound + 1):
        blocks.append(block)
        have += len(block)
        if have >= count:
            break
    return np.concatenate(blocks)[:count]
