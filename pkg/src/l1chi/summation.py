"""Accurate floating-point summation primitives.

The series evaluations in this package sum a few dozen geometrically
decaying coefficients, while the zeta-table builder folds up to ~1e8
terms.  Both paths go through compensated summation so that rounding
error stays at a few ulp of the absolute term sum instead of growing
linearly with the term count.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

# Leaf width for the pairwise reduction.  Blocks up to this size are
# folded with Kahan's compensated loop; larger inputs are split in half.
_LEAF = 32


def kahan_sum(values: Iterable[float]) -> float:
    """Kahan compensated sum; the final compensation is folded back in."""
    s = 0.0
    c = 0.0
    for v in values:
        y = float(v) - c
        t = s + y
        c = (t - s) - y
        s = t
    return s - c


def compensated_sum(terms: Sequence[float] | Iterable[float]) -> float:
    """Pairwise reduction with Kahan-compensated leaf blocks (size <= 32).

    Error is O(log N) ulp relative to sum(|terms|).  Empty input sums
    to exactly 0.0.
    """
    xs = np.asarray(terms if isinstance(terms, (np.ndarray, list, tuple)) else list(terms),
                    dtype=np.float64)
    if xs.ndim != 1:
        xs = xs.ravel()
    if xs.size == 0:
        return 0.0
    return _pairwise(xs)


def _pairwise(xs: np.ndarray) -> float:
    n = xs.size
    if n <= _LEAF:
        return kahan_sum(xs.tolist())
    half = n // 2
    return _pairwise(xs[:half]) + _pairwise(xs[half:])


def kahan_reduce_array(xs: np.ndarray) -> float:
    """Vectorized variant of :func:`compensated_sum` for large arrays.

    Reshapes into (blocks, 32), runs Kahan across the 32 columns with
    numpy ops, then combines every block sum and block compensation with
    ``math.fsum`` (exactly rounded).  Used by the zeta-table builder,
    where term counts reach ~1e8.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if xs.size == 0:
        return 0.0
    pad = (-xs.size) % _LEAF
    if pad:
        xs = np.concatenate([xs, np.zeros(pad)])
    blocks = xs.reshape(-1, _LEAF)
    s = np.zeros(blocks.shape[0])
    c = np.zeros(blocks.shape[0])
    for j in range(_LEAF):
        y = blocks[:, j] - c
        t = s + y
        c = (t - s) - y
        s = t
    return math.fsum(s.tolist()) - math.fsum(c.tolist())
