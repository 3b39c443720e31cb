import math

import numpy as np
import pytest

from l1chi import (L1, L2, FlagStatus, LValueSpectrum, bound_record, check_lls,
                   check_theorems, extrema, l_values, littlewood_indices,
                   normalizers)
from l1chi.zeta import EULER_GAMMA

import golden_scalars as gold


def test_constants():
    assert L2 == pytest.approx(2 * math.exp(EULER_GAMMA), rel=1e-15)
    assert L1 == pytest.approx(math.pi ** 2 / (12 * math.exp(EULER_GAMMA)), rel=1e-15)


def test_extrema_small_primes(budget, table, reference_extrema):
    for q in (3, 13, 997):
        ext = extrema(l_values(q, budget, table))
        expM, expm = reference_extrema[q]
        assert ext.M == pytest.approx(expM, abs=1e-12)
        assert ext.m == pytest.approx(expm, abs=1e-12)
    # q=3: the single character is both max and min
    ext3 = extrema(l_values(3, budget, table))
    assert ext3.M == ext3.m
    assert ext3.M_parity == "odd" and ext3.M_bin == 0


def test_extrema_tie_breaking():
    spec = LValueSpectrum(
        q=11,
        even_values=np.array([0.5, 0.9, 0.5, 0.9]),
        odd_values=np.array([0.9, 0.5, 0.5, 0.9, 0.7]))
    ext = extrema(spec)
    # max 0.9 appears at even bin 2, even bin 4, odd bins 0 and 3;
    # smallest bin wins: odd bin 0... but even bin 2 > 0? bins compared
    # numerically: odd bin 0 is the smallest bin holding 0.9
    assert ext.M == 0.9
    assert (ext.M_bin, ext.M_parity) == (0, "odd")
    # min 0.5 at even bins 1 and 3, odd bins 1 and 2 -> even bin 1
    assert ext.m == 0.5
    assert (ext.m_bin, ext.m_parity) == (1, "even")


def test_normalizers_formula():
    # at q = e^e, loglog q = 1, so f = 1 - log2 + 1/2 + 1 = 2.5 - log2
    f, g = normalizers(math.exp(math.e))
    assert f == pytest.approx(2.5 - math.log(2.0), abs=1e-12)
    for q in (3, 5, 79, 1000, 10**7):
        f, g = normalizers(q)
        assert g - f == pytest.approx(
            14 * math.log(math.log(q)) / math.log(q), rel=1e-14)
        assert g > f


def test_normalizers_value_at_1e7():
    f, _ = normalizers(10**7)
    assert f == pytest.approx(gold.F_AT_1E7, abs=1e-14)


def test_normalizers_domain():
    with pytest.raises(ValueError):
        normalizers(2)


def test_littlewood_indices_figure_values(budget, table, reference_extrema):
    # M''_3 = M_3 / loglog 3
    M3 = reference_extrema[3][0]
    uli3, _ = littlewood_indices(3, M3, M3)
    assert uli3 * L2 == pytest.approx(6.428641, abs=1e-5)

    M13 = reference_extrema[13][0]
    uli13, _ = littlewood_indices(13, M13, reference_extrema[13][1])
    assert uli13 * L2 == pytest.approx(1.492809, abs=1e-5)


def test_littlewood_index_at_19001(budget, table):
    # the spot with the largest m_q loglog q in the full scan
    ext = extrema(l_values(19001, budget, table))
    _, lli = littlewood_indices(19001, ext.M, ext.m)
    assert lli * L1 == pytest.approx(0.7445135, abs=2e-6)


def test_check_theorems_q3(budget, table):
    record = bound_record(3, l_values(3, budget, table))
    flags = record.flags
    assert flags["M_lower"].status is FlagStatus.NOT_APPLICABLE  # q < 79
    assert flags["uli_upper"].status is FlagStatus.NOT_APPLICABLE  # q < 5
    assert flags["m_upper"].status is FlagStatus.NOT_APPLICABLE  # q < 953
    assert flags["lli_lower"].status is FlagStatus.NOT_APPLICABLE  # q < 373
    for name in ("M_upper", "uli_lower", "m_lower", "lli_upper"):
        assert flags[name].status is FlagStatus.PASS, name


def test_check_theorems_thresholds_matter(budget, table):
    # q=73 sits below the q>=79 threshold and does violate the M lower bound
    rec73 = bound_record(73, l_values(73, budget, table))
    f73, _ = normalizers(73)
    assert rec73.M_q < 0.325 * L2 * f73
    assert rec73.flags["M_lower"].status is FlagStatus.NOT_APPLICABLE
    # q=11 violates the m upper bound, below its q>=953 threshold
    rec11 = bound_record(11, l_values(11, budget, table))
    _, g11 = normalizers(11)
    assert rec11.m_q > 5 * L1 / g11
    assert rec11.flags["m_upper"].status is FlagStatus.NOT_APPLICABLE


def test_check_theorems_all_pass_small_range(budget, table):
    from l1chi import enumerate_primes
    for q in enumerate_primes(3, 1000):
        record = bound_record(q, l_values(q, budget, table))
        failing = [n for n, fl in record.flags.items()
                   if fl.failed and not fl.informational]
        assert not failing, (q, failing)


def test_check_lls(budget, table):
    # both informational inequalities hold from q=3 on: f(3) = 10.53... > 0
    # thanks to the 1/loglog term, so M_3 <= L2 f(3) easily
    for q in (3, 997):
        record = bound_record(q, l_values(q, budget, table))
        assert not record.flags["lls_M_upper"].failed
        assert not record.flags["lls_m_lower"].failed
        assert record.flags["lls_M_upper"].informational


def test_m_le_M_and_flags_structure(budget, table):
    for q in (3, 5, 31, 101):
        record = bound_record(q, l_values(q, budget, table))
        assert 0 < record.m_q <= record.M_q
        assert record.uli_max > 0 and record.lli_min > 0
        assert (record.m_q == record.M_q) == (q == 3)
