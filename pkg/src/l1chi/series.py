"""log Gamma, digamma and log sin on (0,1) via truncated zeta series.

All evaluations rest on the Euler series

    log Gamma(x) = gamma*(1-x) + sum_{k>=2} zeta(k) (1-x)^k / k
    psi(x)       = -gamma      - sum_{k>=2} zeta(k) (1-x)^(k-1)

which converge on (0,2).  Arguments below 1/2 are shifted into the fast
convergence window (1/2, 3/2) through

    log Gamma(1+x) = log Gamma(x) + log x,   psi(1+x) = psi(x) + 1/x,

so the series argument never exceeds 1/2 in magnitude and the truncation
index is bounded by n+1 (log Gamma) resp. n+3 (psi) for a target of n
binary digits.  Reflection combinations log Gamma(x) +/- log Gamma(1-x)
and psi(x) -/+ psi(1-x) cancel every other zeta term, halving the work;
the "+" combination yields log sin(pi x), the value the even-character
pipeline consumes.

Truncation errors are a documented tolerance contract (below 2^-n before
rounding); they are never returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .summation import compensated_sum
from .zeta import CONSTANTS, NATIVE_MANT_BITS, ZetaTable

_GAMMA = CONSTANTS.euler_gamma
_LOG2 = CONSTANTS.log2
_LOG_PI = CONSTANTS.log_pi


@dataclass(frozen=True)
class PrecisionBudget:
    """Target precision in binary digits, 2 <= n <= native significand."""

    n: int

    def __post_init__(self) -> None:
        if not 2 <= self.n <= NATIVE_MANT_BITS:
            raise ValueError(
                f"precision must lie in [2, {NATIVE_MANT_BITS}] bits, got {self.n}")


@dataclass(frozen=True)
class SeriesEvalReport:
    """One series evaluation: value, terms actually summed, index bound."""

    value: float
    terms_used: int
    bound_index: int


def _check_unit(x: float) -> None:
    if not 0.0 < x < 1.0:
        raise ValueError(f"argument must lie in (0,1), got {x}")


def _check_unit_open(x: float, n: int) -> None:
    _check_unit(x)
    if x == 0.5:
        raise ValueError("x=1/2 is excluded: the closed form applies")
    if n < 2:
        raise ValueError(f"precision must be >= 2 bits, got {n}")


def truncation_index_gamma(x: float, n: int) -> int:
    """Smallest series length keeping the log Gamma tail below 2^-(n+1).

    For x in (1/2,1):  ceil(((n+1) log2 + |log x|) / |log(1-x)|) - 1
    For x in (0,1/2):  ceil(((n+1) log2 + |log(1-x)|) / |log x|) - 1

    Both are bounded by n+1.
    """
    _check_unit_open(x, n)
    if x > 0.5:
        num = (n + 1) * _LOG2 + abs(math.log(x))
        den = abs(math.log1p(-x))
    else:
        num = (n + 1) * _LOG2 + abs(math.log1p(-x))
        den = abs(math.log(x))
    return math.ceil(num / den) - 1


def truncation_index_psi(x: float, n: int) -> int:
    """Digamma analogue of :func:`truncation_index_gamma`.

    Uses (n+2) log2 in the numerator and no trailing -1; bounded by n+3.
    """
    _check_unit_open(x, n)
    if x > 0.5:
        num = (n + 2) * _LOG2 + abs(math.log(x))
        den = abs(math.log1p(-x))
    else:
        num = (n + 2) * _LOG2 + abs(math.log1p(-x))
        den = abs(math.log(x))
    return math.ceil(num / den)


def _gamma_series_terms(x: float, n: int, table: ZetaTable) -> tuple[list[float], int]:
    """Coefficient list for log Gamma(x) on (0,1)\\{1/2} plus its r-index."""
    if x > 0.5:
        u = 1.0 - x
        alternate = False
    else:
        u = x
        alternate = True
    r = truncation_index_gamma(x, n)
    terms = []
    p = u  # holds u^(k-1); one multiply per term
    for k in range(2, r + 1):
        p *= u
        t = table.zeta(k) * p / k
        terms.append(-t if (alternate and k % 2 == 1) else t)
    return terms, r


def log_gamma_unit_report(x: float, budget: PrecisionBudget, table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(0.5 * _LOG_PI, 0, 0)
    terms, r = _gamma_series_terms(x, budget.n, table)
    if x > 0.5:
        base = _GAMMA * (1.0 - x)
    else:
        base = -math.log(x) - _GAMMA * x
    return SeriesEvalReport(base + compensated_sum(terms), len(terms), r)


def log_gamma_unit(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """log Gamma(x) for x in (0,1); x=1/2 returns (log pi)/2 directly."""
    return log_gamma_unit_report(x, budget, table).value


def log_gamma_positive(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """log Gamma extended to all x > 0 by the recurrence on log x."""
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got {x}")
    if x == math.floor(x):
        m = int(x)
        return compensated_sum([math.log(k) for k in range(2, m)])
    frac = x - math.floor(x)
    if x < 1.0:
        return log_gamma_unit(x, budget, table)
    shifts = [math.log(frac + k) for k in range(int(math.floor(x)))]
    return log_gamma_unit(frac, budget, table) + compensated_sum(shifts)


def _psi_series_terms(x: float, n: int, table: ZetaTable) -> tuple[list[float], int]:
    if x > 0.5:
        u = 1.0 - x
        alternate = False
    else:
        u = x
        alternate = True
    r = truncation_index_psi(x, n)
    terms = []
    p = 1.0  # holds u^(k-2)
    for k in range(2, r + 1):
        t = table.zeta(k) * p * u
        p *= u
        terms.append(-t if (alternate and k % 2 == 0) else t)
    return terms, r


def psi_unit_report(x: float, budget: PrecisionBudget, table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(-2.0 * _LOG2 - _GAMMA, 0, 0)
    terms, r = _psi_series_terms(x, budget.n, table)
    if x > 0.5:
        base = -_GAMMA
    else:
        base = -1.0 / x - _GAMMA
    return SeriesEvalReport(base - compensated_sum(terms), len(terms), r)


def psi_unit(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """Digamma psi(x) for x in (0,1); x=1/2 returns -2 log2 - gamma."""
    return psi_unit_report(x, budget, table).value


def psi_positive(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """Digamma extended to all x > 0 by the recurrence on 1/x."""
    if x <= 0.0:
        raise ValueError(f"argument must be positive, got {x}")
    if x == math.floor(x):
        m = int(x)
        return -_GAMMA + compensated_sum([1.0 / k for k in range(1, m)])
    frac = x - math.floor(x)
    if x < 1.0:
        return psi_unit(x, budget, table)
    shifts = [1.0 / (frac + k) for k in range(int(math.floor(x)))]
    return psi_unit(frac, budget, table) + compensated_sum(shifts)


# ---------------------------------------------------------------------------
# Reflection combinations: only even-index (resp. odd-index) zeta terms
# survive, so the term count drops to about half the plain series.

def _gamma_reflection_count(u: float, n: int) -> int:
    # u = min(x, 1-x) < 1/2; the half-index may be fractional and is
    # rounded up to the next whole term.
    r = truncation_index_gamma(u, n)
    return (r + 1) // 2


def _psi_reflection_count(u: float, n: int) -> int:
    r = truncation_index_psi(u, n)
    return (r + 1) // 2


def log_gamma_reflection_sum_report(x: float, budget: PrecisionBudget,
                                    table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(_LOG_PI, 0, 0)
    u = min(x, 1.0 - x)
    count = _gamma_reflection_count(u, budget.n)
    u2 = u * u
    terms = []
    p = 1.0
    for ell in range(1, count + 1):
        p *= u2
        terms.append(table.zeta(2 * ell) * p / ell)
    return SeriesEvalReport(-math.log(u) + compensated_sum(terms), count, count)


def log_gamma_reflection_sum(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """log Gamma(x) + log Gamma(1-x) using even-index zeta terms only."""
    return log_gamma_reflection_sum_report(x, budget, table).value


def log_gamma_reflection_diff_report(x: float, budget: PrecisionBudget,
                                     table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(0.0, 0, 0)
    u = min(x, 1.0 - x)
    count = _gamma_reflection_count(u, budget.n)
    u2 = u * u
    terms = []
    p = u
    for ell in range(1, count + 1):
        p *= u2
        terms.append(table.zeta(2 * ell + 1) * p / (2 * ell + 1))
    mag = -math.log(u) - 2.0 * _GAMMA * u - 2.0 * compensated_sum(terms)
    # Antisymmetric under x <-> 1-x; the series above is the x < 1/2 branch.
    value = mag if x < 0.5 else -mag
    return SeriesEvalReport(value, count, count)


def log_gamma_reflection_diff(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """log Gamma(x) - log Gamma(1-x) using odd-index zeta terms only."""
    return log_gamma_reflection_diff_report(x, budget, table).value


def psi_reflection_diff_report(x: float, budget: PrecisionBudget,
                               table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(0.0, 0, 0)
    u = min(x, 1.0 - x)
    count = _psi_reflection_count(u, budget.n)
    u2 = u * u
    terms = []
    p = 1.0 / u
    for ell in range(1, count + 1):
        p *= u2
        terms.append(table.zeta(2 * ell) * p)
    mag = -1.0 / u + 2.0 * compensated_sum(terms)
    value = mag if x < 0.5 else -mag
    return SeriesEvalReport(value, count, count)


def psi_reflection_diff(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """psi(x) - psi(1-x) (= -pi cot(pi x)) using even-index zeta terms."""
    return psi_reflection_diff_report(x, budget, table).value


def psi_reflection_sum_report(x: float, budget: PrecisionBudget,
                              table: ZetaTable) -> SeriesEvalReport:
    _check_unit(x)
    if x == 0.5:
        return SeriesEvalReport(2.0 * (-2.0 * _LOG2 - _GAMMA), 0, 0)
    u = min(x, 1.0 - x)
    count = _psi_reflection_count(u, budget.n)
    u2 = u * u
    terms = []
    p = 1.0
    for ell in range(1, count + 1):
        p *= u2
        terms.append(table.zeta(2 * ell + 1) * p)
    value = -2.0 * _GAMMA - 1.0 / u - 2.0 * compensated_sum(terms)
    return SeriesEvalReport(value, count, count)


def psi_reflection_sum(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """psi(x) + psi(1-x) using odd-index zeta terms only."""
    return psi_reflection_sum_report(x, budget, table).value


def log_sin_pi(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    """log sin(pi x) = log pi - (log Gamma(x) + log Gamma(1-x)), x in (0,1)."""
    _check_unit(x)
    if x == 0.5:
        return 0.0
    return _LOG_PI - log_gamma_reflection_sum(x, budget, table)


# ---------------------------------------------------------------------------
# Constant recovery from the reflection series at x = 1/2.

def pi_from_zeta_report(budget: PrecisionBudget, table: ZetaTable) -> SeriesEvalReport:
    """pi via log pi = log 2 + sum_{l>=1} zeta(2l)/(l 4^l)."""
    cutoff = 2.0 ** (-budget.n - 2)
    terms = []
    scale = 1.0
    ell = 0
    while True:
        ell += 1
        scale *= 0.25
        t = table.zeta(2 * ell) * scale / ell
        if t < cutoff:
            break
        terms.append(t)
    value = math.exp(_LOG2 + compensated_sum(terms))
    return SeriesEvalReport(value, len(terms), len(terms))


def pi_from_zeta(budget: PrecisionBudget, table: ZetaTable) -> float:
    return pi_from_zeta_report(budget, table).value


def gamma_from_zeta_report(budget: PrecisionBudget, table: ZetaTable) -> SeriesEvalReport:
    """Euler's gamma via gamma = log 2 - sum_{l>=1} zeta(2l+1)/((2l+1) 4^l)."""
    cutoff = 2.0 ** (-budget.n - 2)
    terms = []
    scale = 1.0
    ell = 0
    while True:
        ell += 1
        scale *= 0.25
        t = table.zeta(2 * ell + 1) * scale / (2 * ell + 1)
        if t < cutoff:
            break
        terms.append(t)
    value = _LOG2 - compensated_sum(terms)
    return SeriesEvalReport(value, len(terms), len(terms))


def gamma_from_zeta(budget: PrecisionBudget, table: ZetaTable) -> float:
    return gamma_from_zeta_report(budget, table).value


# ---------------------------------------------------------------------------
# Vectorized kernels for the per-prime pipeline.  They evaluate the same
# series as the scalar operations with one uniform truncation index (the
# supremum over the argument range), which can only shrink the tail.

def _kahan_add(acc: np.ndarray, comp: np.ndarray, term: np.ndarray) -> None:
    y = term - comp
    t = acc + y
    comp[...] = (t - acc) - y
    acc[...] = t


def neg_log_sin_pi_batch(x: np.ndarray, n: int, table: ZetaTable) -> np.ndarray:
    """-log sin(pi x) element-wise for x in (0,1), via the even-zeta series."""
    x = np.asarray(x, dtype=np.float64)
    u = np.minimum(x, 1.0 - x)
    count = (n + 2) // 2  # sup of the per-point reflection term count
    u2 = u * u
    acc = np.zeros_like(u)
    comp = np.zeros_like(u)
    p = np.ones_like(u)
    for ell in range(1, count + 1):
        p = p * u2
        _kahan_add(acc, comp, table.zeta(2 * ell) * p / ell)
    return -_LOG_PI - np.log(u) + (acc - comp)


def log_gamma_unit_batch(x: np.ndarray, n: int, table: ZetaTable) -> np.ndarray:
    """log Gamma element-wise for x in (0,1), uniform truncation index n+1."""
    x = np.asarray(x, dtype=np.float64)
    low = x < 0.5
    u = np.where(low, x, 1.0 - x)
    even = np.zeros_like(u)
    even_c = np.zeros_like(u)
    odd = np.zeros_like(u)
    odd_c = np.zeros_like(u)
    p = u.copy()
    for k in range(2, n + 2):
        p = p * u
        term = table.zeta(k) * p / k
        if k % 2 == 0:
            _kahan_add(even, even_c, term)
        else:
            _kahan_add(odd, odd_c, term)
    series = (even - even_c) + np.where(low, -1.0, 1.0) * (odd - odd_c)
    base = np.where(low, -np.log(np.where(low, x, 1.0)) - _GAMMA * x, _GAMMA * u)
    out = base + series
    return np.where(x == 0.5, 0.5 * _LOG_PI, out)


def psi_unit_batch(x: np.ndarray, n: int, table: ZetaTable) -> np.ndarray:
    """Digamma element-wise for x in (0,1), uniform truncation index n+3."""
    x = np.asarray(x, dtype=np.float64)
    low = x < 0.5
    u = np.where(low, x, 1.0 - x)
    even = np.zeros_like(u)
    even_c = np.zeros_like(u)
    odd = np.zeros_like(u)
    odd_c = np.zeros_like(u)
    p = np.ones_like(u)
    for k in range(2, n + 4):
        term = table.zeta(k) * p * u
        p = p * u
        if k % 2 == 0:
            _kahan_add(even, even_c, term)
        else:
            _kahan_add(odd, odd_c, term)
    series = np.where(low, -1.0, 1.0) * (even - even_c) + (odd - odd_c)
    base = np.where(low, -1.0 / np.where(low, x, 1.0) - _GAMMA, -_GAMMA)
    out = base - series
    return np.where(x == 0.5, -2.0 * _LOG2 - _GAMMA, out)


# ---------------------------------------------------------------------------
# Enlarged-convergence-radius variants.  Not public API: they converge on
# (-1,3) but gain nothing on (0,1), so they exist purely as cross-check
# oracles for the primary series.

def _log_gamma_enlarged(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    _check_unit(x)
    w = 1.0 - x
    cutoff = 2.0 ** (-budget.n - 2)
    terms = []
    p = w
    for k in range(2, table.k_max + 1):
        p *= w
        t = (table.zeta(k) - 1.0) * p / k
        terms.append(t)
        if abs(t) < cutoff and k > 4:
            break
    return -math.log(x) + (_GAMMA - 1.0) * w + compensated_sum(terms)


def _psi_enlarged(x: float, budget: PrecisionBudget, table: ZetaTable) -> float:
    _check_unit(x)
    w = 1.0 - x
    cutoff = 2.0 ** (-budget.n - 2)
    terms = []
    p = 1.0
    for k in range(2, table.k_max + 1):
        t = (table.zeta(k) - 1.0) * p * w
        p *= w
        terms.append(t)
        if abs(t) < cutoff and k > 4:
            break
    return -1.0 / x - _GAMMA + 1.0 - compensated_sum(terms)
