"""Complex DFT of arbitrary length with O(m log m) cost.

Forward convention (no normalization), fixed by the character pipeline:

    X[t] = sum_k exp(-2 pi i t k / m) x[k]

Power-of-two lengths run through an iterative radix-2 transform; every
other length goes through the Bluestein chirp-z reduction to a cyclic
convolution of power-of-two length >= 2m-1.  Quadratic chirp phases are
reduced mod 2m in integer arithmetic before the complex exponential, so
no accuracy is lost to large-argument trig reduction (valid for
m < 2^31, far above any modulus this package handles).

A direct O(m^2) summation (`dft_naive`) is kept as an independent test
oracle; it never feeds the production path.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length()


def _as_complex_vector(v) -> np.ndarray:
    x = np.asarray(v)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("input must be a one-dimensional vector of length >= 1")
    x = x.astype(np.complex128, copy=True)
    if not np.isfinite(x.view(np.float64)).all():
        raise ValueError("input vector contains non-finite entries")
    return x


@lru_cache(maxsize=8)
def _pow2_plan(length: int) -> tuple[np.ndarray, np.ndarray]:
    """Bit-reversal permutation and half-length root table for radix-2."""
    bits = length.bit_length() - 1
    idx = np.arange(length, dtype=np.int64)
    rev = np.zeros(length, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    roots = np.exp(-2j * np.pi * np.arange(length // 2) / length)
    rev.setflags(write=False)
    roots.setflags(write=False)
    return rev, roots


def _fft_pow2(x: np.ndarray) -> np.ndarray:
    """In-place-style radix-2 DIT transform; length must be a power of two."""
    length = x.size
    if length == 1:
        return x
    perm, roots = _pow2_plan(length)
    y = x[perm]
    half = 1
    while half < length:
        w = roots[:: length // (2 * half)][:half]
        y = y.reshape(-1, 2 * half)
        tail = y[:, half:] * w
        head = y[:, :half]
        y[:, half:] = head - tail
        y[:, :half] = head + tail
        half *= 2
    return y.reshape(length)


def _ifft_pow2(x: np.ndarray) -> np.ndarray:
    return np.conj(_fft_pow2(np.conj(x))) / x.size


@lru_cache(maxsize=8)
def _bluestein_plan(m: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Chirp and transformed filter for length-m Bluestein, cached per m."""
    length = next_pow2(2 * m - 1)
    k = np.arange(m, dtype=np.uint64)
    phase = ((k * k) % np.uint64(2 * m)).astype(np.float64)
    chirp = np.exp((-1j * np.pi / m) * phase)
    filt = np.zeros(length, dtype=np.complex128)
    filt[:m] = np.conj(chirp)
    filt[length - m + 1:] = np.conj(chirp[1:][::-1])
    filt_fft = _fft_pow2(filt)
    chirp.setflags(write=False)
    filt_fft.setflags(write=False)
    return length, chirp, filt_fft


def _dft_bluestein(x: np.ndarray) -> np.ndarray:
    m = x.size
    length, chirp, filt_fft = _bluestein_plan(m)
    buf = np.zeros(length, dtype=np.complex128)
    buf[:m] = x * chirp
    buf = _fft_pow2(buf)
    buf *= filt_fft
    buf = _ifft_pow2(buf)
    return buf[:m] * chirp


def dft_forward(v) -> np.ndarray:
    """Forward DFT with the exp(-2 pi i t k / m) kernel, any length."""
    x = _as_complex_vector(v)
    m = x.size
    if m & (m - 1) == 0:
        return _fft_pow2(x)
    return _dft_bluestein(x)


def dft_naive(v) -> np.ndarray:
    """Direct O(m^2) DFT with the same kernel; test oracle, m <= 4096.

    Kernel phases are formed from (t*k mod m) in integers, so each root
    is taken from an exact table with no argument-reduction error.
    """
    x = _as_complex_vector(v)
    m = x.size
    if m > 4096:
        raise ValueError(f"dft_naive is an O(m^2) oracle capped at m=4096, got {m}")
    roots = np.exp(-2j * np.pi * np.arange(m) / m)
    k = np.arange(m, dtype=np.int64)
    out = np.empty(m, dtype=np.complex128)
    for t in range(m):
        out[t] = roots[(t * k) % m] @ x
    return out
