"""Odd-prime enumeration via a segmented sieve of Eratosthenes."""

from __future__ import annotations

import math

import numpy as np

_SEGMENT_ODDS = 1 << 20  # odd numbers per segment (~2M integers of span)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit (including 2), as int64."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def enumerate_primes(lo: int, hi: int) -> list[int]:
    """Ascending odd primes in [lo, hi]; requires 3 <= lo <= hi."""
    if not 3 <= lo <= hi:
        raise ValueError(f"range must satisfy 3 <= lo <= hi, got [{lo}, {hi}]")
    base = simple_sieve(math.isqrt(hi))
    base_odd = base[base > 2]
    out: list[int] = []
    low = lo if lo % 2 == 1 else lo + 1
    while low <= hi:
        high = min(low + 2 * _SEGMENT_ODDS, hi + 1)  # exclusive
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in base_odd:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2:: p] = False
        seg = low + 2 * np.flatnonzero(mask)
        out.extend(int(v) for v in seg)
        low = high if high % 2 == 1 else high + 1
    return out
