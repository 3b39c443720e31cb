"""Spectrum extrema, Littlewood indices and the inequality battery.

Constants follow the usual normalizations

    L2 = 2 e^gamma,        L1 = pi^2 / (12 e^gamma),

with the slowly-varying comparison functions

    f(q) = log log q - log 2 + 1/2 + 1/log log q,
    g(q) = f(q) + 14 log log q / log q.

The battery checks, with their applicability thresholds:

    M_q < 0.62 L2 f(q)            (all q)      M_q > 0.325 L2 f(q)  (q >= 79)
    max ULI > 0.4                 (all q)      max ULI < 0.66       (q >= 5)
    m_q > 2.35 L1 / g(q)          (all q)      m_q < 5 L1 / g(q)    (q >= 953)
    min LLI < 2                   (all q)      min LLI > 1.13       (q >= 373)

where ULI = |L| / (L2 log log q) and LLI = |L| log log q / L1.  The
unconditional-style bounds M_q <= L2 f(q) and 1/m_q <= g(q)/L1 are
evaluated as informational flags only (they are GRH statements for very
large q; at desk scale they are observations, not theorems).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .characters import LValueSpectrum
from .zeta import CONSTANTS

L2 = 2.0 * math.exp(CONSTANTS.euler_gamma)
L1 = math.pi ** 2 / (12.0 * math.exp(CONSTANTS.euler_gamma))

EVEN = "even"
ODD = "odd"

# Guard band for inequality checks: a pass/fail decided by less than
# this margin is flagged marginal (double-precision spectra vs the
# extended-precision regime the thresholds were calibrated in).
DEFAULT_GUARD_BAND = 1e-9


class FlagStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class Flag:
    """Outcome of one inequality check."""

    name: str
    status: FlagStatus
    margin: float       # lhs-vs-rhs distance in the passing direction
    marginal: bool      # within the guard band of the threshold
    informational: bool = False

    @property
    def failed(self) -> bool:
        return self.status is FlagStatus.FAIL


@dataclass(frozen=True)
class SpectrumExtrema:
    M: float
    m: float
    M_parity: str
    M_bin: int
    m_parity: str
    m_bin: int


@dataclass(frozen=True)
class BoundRecord:
    """Per-prime summary consumed by the batch CSV writer and checkers."""

    q: int
    M_q: float
    m_q: float
    M_parity: str
    M_bin: int
    m_parity: str
    m_bin: int
    f_q: float
    g_q: float
    uli_max: float
    lli_min: float
    flags: dict[str, Flag] = field(default_factory=dict)


def extrema(spectrum: LValueSpectrum) -> SpectrumExtrema:
    """Max and min of |L(1,chi)| with the location of each extremum.

    Ties break toward the smallest DFT bin, even parity before odd.
    """
    if spectrum.count == 0:
        raise ValueError("spectrum is empty")
    candidates_max = []
    candidates_min = []
    ev = spectrum.even_values
    od = spectrum.odd_values
    if ev.size:
        i = int(ev.argmax())
        candidates_max.append((float(ev[i]), i + 1, 0))
        i = int(ev.argmin())
        candidates_min.append((float(ev[i]), i + 1, 0))
    if od.size:
        i = int(od.argmax())
        candidates_max.append((float(od[i]), i, 1))
        i = int(od.argmin())
        candidates_min.append((float(od[i]), i, 1))
    # argmax/argmin already return the smallest bin within each parity.
    best_max = max(candidates_max, key=lambda c: (c[0], -c[1], -c[2]))
    best_min = min(candidates_min, key=lambda c: (c[0], c[1], c[2]))
    parity = {0: EVEN, 1: ODD}
    return SpectrumExtrema(
        M=best_max[0], m=best_min[0],
        M_parity=parity[best_max[2]], M_bin=best_max[1],
        m_parity=parity[best_min[2]], m_bin=best_min[1],
    )


def normalizers(q: float) -> tuple[float, float]:
    """(f(q), g(q)); defined for q >= 3 (log log q > 0)."""
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    ll = math.log(math.log(q))
    f = ll - math.log(2.0) + 0.5 + 1.0 / ll
    g = f + 14.0 * ll / math.log(q)
    return f, g


def littlewood_indices(q: int, M_q: float, m_q: float) -> tuple[float, float]:
    """(max ULI, min LLI) for the spectrum extrema of q."""
    ll = math.log(math.log(q))
    return M_q / (L2 * ll), m_q * ll / L1


def bound_record(q: int, spectrum: LValueSpectrum,
                 guard: float = DEFAULT_GUARD_BAND) -> BoundRecord:
    """Assemble the full per-prime record, flags included."""
    ext = extrema(spectrum)
    f_q, g_q = normalizers(q)
    uli_max, lli_min = littlewood_indices(q, ext.M, ext.m)
    record = BoundRecord(
        q=q, M_q=ext.M, m_q=ext.m,
        M_parity=ext.M_parity, M_bin=ext.M_bin,
        m_parity=ext.m_parity, m_bin=ext.m_bin,
        f_q=f_q, g_q=g_q, uli_max=uli_max, lli_min=lli_min,
    )
    record.flags.update(check_theorems(record, guard))
    record.flags.update(check_lls(record, guard))
    return record


def _flag(name: str, lhs: float, rhs: float, want_less: bool,
          applicable: bool, guard: float, informational: bool = False) -> Flag:
    if not applicable:
        return Flag(name, FlagStatus.NOT_APPLICABLE, math.nan, False, informational)
    margin = (rhs - lhs) if want_less else (lhs - rhs)
    status = FlagStatus.PASS if margin > 0 else FlagStatus.FAIL
    return Flag(name, status, margin, abs(margin) <= guard, informational)


def check_theorems(record: BoundRecord,
                   guard: float = DEFAULT_GUARD_BAND) -> dict[str, Flag]:
    """Evaluate the inequality battery; failures are reported, not raised."""
    q, M, m = record.q, record.M_q, record.m_q
    f_q, g_q = record.f_q, record.g_q
    flags = [
        _flag("M_upper", M, 0.62 * L2 * f_q, True, True, guard),
        _flag("M_lower", M, 0.325 * L2 * f_q, False, q >= 79, guard),
        _flag("uli_lower", record.uli_max, 0.4, False, True, guard),
        _flag("uli_upper", record.uli_max, 0.66, True, q >= 5, guard),
        _flag("m_lower", m, 2.35 * L1 / g_q, False, True, guard),
        _flag("m_upper", m, 5.0 * L1 / g_q, True, q >= 953, guard),
        _flag("lli_upper", record.lli_min, 2.0, True, True, guard),
        _flag("lli_lower", record.lli_min, 1.13, False, q >= 373, guard),
    ]
    return {fl.name: fl for fl in flags}


def check_lls(record: BoundRecord,
              guard: float = DEFAULT_GUARD_BAND) -> dict[str, Flag]:
    """Informational check of the unconditional-style inequalities."""
    flags = [
        _flag("lls_M_upper", record.M_q, L2 * record.f_q, True, True, guard,
              informational=True),
        _flag("lls_m_lower", 1.0 / record.m_q, record.g_q / L1, True, True,
              guard, informational=True),
    ]
    return {fl.name: fl for fl in flags}
