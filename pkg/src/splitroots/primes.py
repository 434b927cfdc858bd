"""Primality testing and prime enumeration."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

# This witness set is deterministic for every n < 3.3e24, which covers 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_LIMIT = 1 << 16
_SIEVE_ROOT_LIMIT = 1 << 27
_base_cache = {"limit": 0, "primes": np.zeros(0, dtype=np.int64)}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def _base_primes(limit: int) -> np.ndarray:
    if _base_cache["limit"] < limit:
        _base_cache["limit"] = max(_SMALL_LIMIT, limit)
        _base_cache["primes"] = simple_sieve(_base_cache["limit"])
    primes = _base_cache["primes"]
    return primes[: np.searchsorted(primes, limit, side="right")]


def primes_between(lo: int, hi: int) -> np.ndarray:
    """Primes p with lo < p <= hi, as an int64 array (segmented sieve)."""
    start = max(lo + 1, 2)
    if hi < start:
        return np.zeros(0, dtype=np.int64)
    if math.isqrt(hi) > _SIEVE_ROOT_LIMIT:
        # far beyond sieving range: test candidates one by one
        return np.array([q for q in range(start, hi + 1) if is_prime(q)],
                        dtype=np.int64 if hi < (1 << 63) else object)
    size = hi - start + 1
    flags = np.ones(size, dtype=bool)
    for p in _base_primes(math.isqrt(hi)):
        p = int(p)
        first = max(p * p, ((start + p - 1) // p) * p)
        if first > hi:
            continue
        flags[first - start::p] = False
    return np.nonzero(flags)[0].astype(np.int64) + start


def iter_prime_segments(lo: int, hi: int, segment: int = 1 << 20) -> Iterator[np.ndarray]:
    """Primes in (lo, hi] in increasing order, yielded segment by segment."""
    a = lo
    while a < hi:
        b = min(hi, a + segment)
        chunk = primes_between(a, b)
        if chunk.size:
            yield chunk
        a = b


def prime_count(x: int) -> int:
    return sum(int(c.size) for c in iter_prime_segments(0, x))


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    m = n + 1
    while not is_prime(m):
        m += 1
    return m
