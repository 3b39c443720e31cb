"""Precomputed Riemann zeta values at integer arguments k >= 2.

Every series in the special-function module consumes zeta(k) as a fixed
coefficient, so the table is built once per process and treated as
immutable afterwards.  Generation uses the alternating eta series

    zeta(k) = (1 - 2^(1-k))^(-1) * sum_{n>=1} (-1)^(n+1) n^(-k),

truncated where the alternating-series bound (first omitted term)
guarantees the tail is below the precision target.  An Euler-Maclaurin
direct summation is provided as an independent cross-check for small k.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .summation import kahan_reduce_array

NATIVE_MANT_BITS = sys.float_info.mant_dig  # 53 for IEEE double

# Euler-Mascheroni constant to full double precision.
EULER_GAMMA = 0.5772156649015328606065


@dataclass(frozen=True)
class Constants:
    """Fundamental constants used across the pipeline."""

    euler_gamma: float = EULER_GAMMA
    log2: float = math.log(2.0)
    log_pi: float = math.log(math.pi)
    pi: float = math.pi


CONSTANTS = Constants()


@dataclass(frozen=True)
class ZetaTable:
    """Immutable table of zeta(k) for 2 <= k <= k_max.

    ``values[k]`` holds zeta(k); slots 0 and 1 are NaN padding so the
    array can be indexed directly by k.
    """

    k_max: int
    n_bits: int
    values: np.ndarray = field(repr=False)

    def zeta(self, k: int) -> float:
        if not 2 <= k <= self.k_max:
            raise IndexError(f"zeta index k={k} outside table range [2, {self.k_max}]")
        return float(self.values[k])


def zeta(table: ZetaTable, k: int) -> float:
    """Pure lookup of zeta(k) from a prebuilt table."""
    return table.zeta(k)


def default_k_max(n_bits: int) -> int:
    # Covers the largest truncation index the series module can ask for
    # (n+1 for log-gamma, n+3 for digamma) with slack.
    return n_bits + 8


def _eta_term_count(k: int, n_bits: int) -> int:
    # Alternating-series bound: |tail after N terms| <= (N+1)^(-k).
    # Demand (N+1)^(-k) <= 2^-(n_bits+3) so that even after the
    # (1-2^(1-k))^(-1) <= 2 scale factor the truncation error stays
    # below 2^-(n_bits+2), leaving room for summation rounding.
    return max(8, int(math.ceil(2.0 ** ((n_bits + 3) / k))))


def _eta_partial_sum(k: int, n_terms: int) -> float:
    chunk = 1 << 22
    partials = []
    for lo in range(1, n_terms + 1, chunk):
        hi = min(lo + chunk, n_terms + 1)
        n = np.arange(lo, hi, dtype=np.float64)
        terms = n ** (-float(k))
        terms[lo % 2::2] *= -1.0  # negate even n
        partials.append(kahan_reduce_array(terms))
    return math.fsum(partials)


def build_zeta_table(k_max: int, n_bits: int) -> ZetaTable:
    """Build the zeta table via the alternating eta series.

    Each stored value approximates zeta(k) within 2^(-n_bits-1).
    """
    if k_max < 3:
        raise ValueError(f"k_max must be >= 3, got {k_max}")
    if not 2 <= n_bits <= NATIVE_MANT_BITS:
        raise ValueError(
            f"n_bits must lie in [2, {NATIVE_MANT_BITS}], got {n_bits}")
    values = np.full(k_max + 1, np.nan)
    for k in range(2, k_max + 1):
        eta = _eta_partial_sum(k, _eta_term_count(k, n_bits))
        values[k] = eta / (1.0 - 2.0 ** (1 - k))
    values.setflags(write=False)
    return ZetaTable(k_max=k_max, n_bits=n_bits, values=values)


def zeta_euler_maclaurin(k: int, cutoff: int = 256) -> float:
    """Independent zeta(k) via direct summation plus Euler-Maclaurin tail.

    zeta(k) ~ sum_{n<N} n^-k + N^(1-k)/(k-1) + N^-k/2 + k*N^(-k-1)/12
              - k(k+1)(k+2)*N^(-k-3)/720
              + k(k+1)(k+2)(k+3)(k+4)*N^(-k-5)/30240

    With N=256 the omitted correction is below 1e-18 for every k >= 2.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    n = np.arange(1, cutoff, dtype=np.float64)
    head = kahan_reduce_array(n ** (-float(k)))
    x = float(cutoff)
    tail = (x ** (1 - k) / (k - 1)
            + 0.5 * x ** (-k)
            + k * x ** (-k - 1) / 12.0
            - k * (k + 1) * (k + 2) * x ** (-k - 3) / 720.0
            + k * (k + 1) * (k + 2) * (k + 3) * (k + 4) * x ** (-k - 5) / 30240.0)
    return head + tail


def dump_table(table: ZetaTable, path: str | Path) -> None:
    """Write the table as plain text, one line per k: ``k <hex-float>``."""
    lines = [f"# n_bits {table.n_bits}\n"]
    for k in range(2, table.k_max + 1):
        lines.append(f"{k} {table.values[k].hex()}\n")
    Path(path).write_text("".join(lines))


def load_table(path: str | Path) -> ZetaTable:
    """Load a table written by :func:`dump_table`.

    Accepts hex-float or plain decimal values.
    """
    n_bits = None
    entries: dict[int, float] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n_bits":
                n_bits = int(parts[1])
            continue
        k_str, v_str = line.split()
        v = float.fromhex(v_str) if v_str.lower().lstrip("+-").startswith("0x") else float(v_str)
        entries[int(k_str)] = v
    if n_bits is None or not entries:
        raise ValueError(f"malformed zeta table file: {path}")
    k_max = max(entries)
    if min(entries) != 2 or len(entries) != k_max - 1:
        raise ValueError(f"zeta table file missing indices: {path}")
    values = np.full(k_max + 1, np.nan)
    for k, v in entries.items():
        values[k] = v
    values.setflags(write=False)
    return ZetaTable(k_max=k_max, n_bits=n_bits, values=values)
