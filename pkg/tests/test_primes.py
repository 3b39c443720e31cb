import numpy as np
import pytest

from l1chi import enumerate_primes, simple_sieve


def test_small_range():
    assert enumerate_primes(3, 20) == [3, 5, 7, 11, 13, 17, 19]


def test_excludes_two():
    assert enumerate_primes(3, 3) == [3]
    assert 2 not in enumerate_primes(3, 100)


def test_empty_range():
    assert enumerate_primes(14, 16) == []


def test_invalid_ranges():
    with pytest.raises(ValueError):
        enumerate_primes(2, 10)
    with pytest.raises(ValueError):
        enumerate_primes(10, 5)


def test_pi_of_one_million():
    primes = enumerate_primes(3, 10**6)
    assert len(primes) == 78497  # pi(10^6) = 78498 minus the prime 2


def test_matches_simple_sieve():
    reference = [int(p) for p in simple_sieve(10000) if p > 2]
    assert enumerate_primes(3, 10000) == reference
    # window not starting at 3
    assert enumerate_primes(5000, 6000) == [p for p in reference if 5000 <= p <= 6000]


def test_segment_boundaries():
    # force several segments with a window that is not segment-aligned
    lo, hi = 3, 2 * (1 << 20) * 2 + 12345
    got = enumerate_primes(lo, hi)
    ref = [int(p) for p in simple_sieve(hi) if p > 2]
    assert got == ref


def test_ascending_unique():
    ps = enumerate_primes(3, 50000)
    arr = np.array(ps)
    assert np.all(np.diff(arr) > 0)
