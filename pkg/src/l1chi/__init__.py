"""Dirichlet |L(1,chi)| spectra modulo odd primes.

Pipeline: precomputed zeta values -> truncated-series special functions
-> primitive-root reindexing + decimation in frequency -> arbitrary
length FFT -> per-prime extrema and Littlewood-type bound checks, with
a batch CLI for prime ranges.
"""

from .zeta import (CONSTANTS, Constants, ZetaTable, build_zeta_table,
                   default_k_max, dump_table, load_table, zeta)
from .summation import compensated_sum, kahan_sum
from .series import (PrecisionBudget, SeriesEvalReport, gamma_from_zeta,
                     log_gamma_positive, log_gamma_reflection_diff,
                     log_gamma_reflection_sum, log_gamma_unit, log_sin_pi,
                     pi_from_zeta, psi_positive, psi_reflection_diff,
                     psi_reflection_sum, psi_unit, truncation_index_gamma,
                     truncation_index_psi)
from .dft import dft_forward, dft_naive
from .characters import (CharacterModulus, LValueSpectrum, build_modulus,
                         decimate_even, decimate_odd, find_primitive_root,
                         is_prime, l_values, l_values_direct)
from .bounds import (L1, L2, BoundRecord, Flag, FlagStatus, SpectrumExtrema,
                     bound_record, check_lls, check_theorems, extrema,
                     littlewood_indices, normalizers)
from .primes import enumerate_primes, simple_sieve
from .batch import Checkpoint, RunConfig, RunResult, run_range
from .plots import emit_plot_script

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "Constants", "ZetaTable", "build_zeta_table", "default_k_max",
    "dump_table", "load_table", "zeta",
    "compensated_sum", "kahan_sum",
    "PrecisionBudget", "SeriesEvalReport", "gamma_from_zeta",
    "log_gamma_positive", "log_gamma_reflection_diff",
    "log_gamma_reflection_sum", "log_gamma_unit", "log_sin_pi",
    "pi_from_zeta", "psi_positive", "psi_reflection_diff",
    "psi_reflection_sum", "psi_unit", "truncation_index_gamma",
    "truncation_index_psi",
    "dft_forward", "dft_naive",
    "CharacterModulus", "LValueSpectrum", "build_modulus", "decimate_even",
    "decimate_odd", "find_primitive_root", "is_prime", "l_values",
    "l_values_direct",
    "L1", "L2", "BoundRecord", "Flag", "FlagStatus", "SpectrumExtrema",
    "bound_record", "check_lls", "check_theorems", "extrema",
    "littlewood_indices", "normalizers",
    "enumerate_primes", "simple_sieve",
    "Checkpoint", "RunConfig", "RunResult", "run_range",
    "emit_plot_script",
]
