"""Character sums mod an odd prime q as DFTs over a primitive-root reindex.

With g a primitive root of q and a_k = g^k mod q, every nontrivial
character sum sum_a chi(a) f(a/q) becomes a length-(q-1) DFT of the
sequence f(a_k/q).  Splitting output bins by parity (decimation in
frequency) reduces this to two DFTs of length m = (q-1)/2:

    even characters, f = log Gamma:  b_k = -log sin(pi a_k / q)
                                     (the log pi constant drops out at
                                     every nontrivial bin by orthogonality)
    odd characters,  f(x) = x:       c_k = e(-k/(q-1)) (2 a_k / q - 1)

and the spectrum of |L(1,chi)| over all q-2 nontrivial characters is

    even bin t in [1,m):  |L(1,chi_1^(2t))|   = (2/sqrt(q))  |DFT_m(b)[t]|
    odd  bin t in [0,m):  |L(1,chi_1^(2t+1))| = (pi/sqrt(q)) |DFT_m(c)[t]|

A trivially-summed O(q^2) evaluation with three redundant per-character
routes (digamma, log Gamma, first chi-Bernoulli number) backs the FFT
path as an oracle for moderate q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import series
from .dft import dft_forward
from .zeta import ZetaTable
from .series import PrecisionBudget

# The trivially-summed oracle is O(q^2); refuse silently unbounded work.
DIRECT_ORACLE_CAP = 5000

# Routes in l_values_direct must agree to this relative tolerance.
_ROUTE_RTOL = 1e-9

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_odd_prime(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    if q >= 1 << 31:
        # int64 products a*b with a,b < q stay exact only below 2^31
        raise ValueError(f"q must be below 2^31, got {q}")


def _factor(n: int) -> list[int]:
    """Distinct prime factors by trial division (n < 2^31 in practice)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def find_primitive_root(q: int) -> int:
    """Smallest primitive root of the odd prime q."""
    _check_odd_prime(q)
    cofactors = [(q - 1) // p for p in _factor(q - 1)]
    g = 2
    while True:
        if all(pow(g, e, q) != 1 for e in cofactors):
            return g
        g += 1


@dataclass(frozen=True)
class CharacterModulus:
    """Odd prime q with primitive root g and power sequence a_k = g^k mod q.

    powers has length q-1; a_0 = 1 and a_(k+m) = q - a_k since g^m = -1.
    """

    q: int
    g: int
    m: int
    powers: np.ndarray = field(repr=False)


def build_modulus(q: int) -> CharacterModulus:
    """Power sequence by repeated squaring of the generator (vectorized)."""
    g = find_primitive_root(q)
    total = q - 1
    powers = np.array([1], dtype=np.int64)
    step = g  # holds g^len(powers) mod q
    while powers.size < total:
        take = min(powers.size, total - powers.size)
        powers = np.concatenate([powers, (powers[:take] * step) % q])
        step = step * step % q
    powers.setflags(write=False)
    return CharacterModulus(q=q, g=g, m=total // 2, powers=powers)


@dataclass(frozen=True)
class LValueSpectrum:
    """All q-2 values |L(1,chi)| split by character parity.

    even_values[i] is the even character chi_1^(2t) at DFT bin t = i+1
    (bin 0 is the trivial character and is excluded); odd_values[t] is
    chi_1^(2t+1) at bin t.
    """

    q: int
    even_values: np.ndarray = field(repr=False)
    odd_values: np.ndarray = field(repr=False)

    def all_values(self) -> np.ndarray:
        return np.concatenate([self.even_values, self.odd_values])

    @property
    def count(self) -> int:
        return self.even_values.size + self.odd_values.size


def decimate_even(mod: CharacterModulus, budget: PrecisionBudget,
                  table: ZetaTable, native_logsin: bool = False) -> np.ndarray:
    """Even-bin input b_k = -log sin(pi a_k / q) as a complex vector.

    The default path evaluates log sin through the even-zeta reflection
    series; ``native_logsin`` switches to the platform log/sin as a
    speed/accuracy cross-check.
    """
    x = mod.powers[:mod.m].astype(np.float64) / mod.q
    if native_logsin:
        # sin(pi x) = sin(pi (1-x)): the reduced argument avoids relative
        # error blow-up next to the zero of sin at pi
        b = -np.log(np.sin(np.pi * np.minimum(x, 1.0 - x)))
    else:
        b = series.neg_log_sin_pi_batch(x, budget.n, table)
    return b.astype(np.complex128)


def decimate_odd(mod: CharacterModulus) -> np.ndarray:
    """Odd-bin input c_k = e(-k/(q-1)) (2 a_k / q - 1)."""
    k = np.arange(mod.m, dtype=np.float64)
    twist = np.exp(-2j * np.pi * k / (mod.q - 1))
    return twist * (2.0 * mod.powers[:mod.m] / mod.q - 1.0)


def l_values(q: int, budget: PrecisionBudget, table: ZetaTable,
             native_logsin: bool = False) -> LValueSpectrum:
    """Spectrum of |L(1,chi)| over all nontrivial chi mod q, via FFT."""
    _check_odd_prime(q)
    mod = build_modulus(q)
    scale = 1.0 / math.sqrt(q)
    even_fft = dft_forward(decimate_even(mod, budget, table, native_logsin))
    even_vals = 2.0 * scale * np.abs(even_fft[1:])
    odd_fft = dft_forward(decimate_odd(mod))
    odd_vals = math.pi * scale * np.abs(odd_fft)
    even_vals.setflags(write=False)
    odd_vals.setflags(write=False)
    return LValueSpectrum(q=q, even_values=even_vals, odd_values=odd_vals)


def l_values_direct(q: int, budget: PrecisionBudget, table: ZetaTable,
                    cap: int = DIRECT_ORACLE_CAP) -> LValueSpectrum:
    """Trivially-summed spectrum with three redundant routes per character.

    Per character chi = chi_1^j the routes are
      (i)   |L| = (1/q)        |sum_a chi(a) psi(a/q)|        (all j)
      (ii)  |L| = (2/sqrt q)   |sum_a conj(chi)(a) log Gamma(a/q)|  (even j)
      (iii) |L| = (pi/q^(3/2)) |sum_a a conj(chi)(a)|         (odd j)
    and must agree within 1e-9 relative; the log Gamma / Bernoulli
    values are the ones returned.
    """
    _check_odd_prime(q)
    if q > cap:
        raise ValueError(
            f"direct oracle is O(q^2); q={q} exceeds the cap {cap}")
    mod = build_modulus(q)
    m = mod.m
    x = mod.powers.astype(np.float64) / q
    cols = np.stack([
        series.psi_unit_batch(x, budget.n, table),
        series.log_gamma_unit_batch(x, budget.n, table),
        mod.powers.astype(np.float64),
    ], axis=1).astype(np.complex128)
    roots = np.exp(-2j * np.pi * np.arange(q - 1) / (q - 1))
    k = np.arange(q - 1, dtype=np.int64)
    even_vals = np.empty(m - 1)
    odd_vals = np.empty(m)
    for j in range(1, q - 1):
        zp, zg, za = roots[(j * k) % (q - 1)] @ cols
        psi_route = abs(zp) / q
        if j % 2 == 0:
            value = 2.0 * abs(zg) / math.sqrt(q)
            even_vals[j // 2 - 1] = value
        else:
            value = math.pi * abs(za) / q ** 1.5
            odd_vals[(j - 1) // 2] = value
        if not math.isclose(psi_route, value, rel_tol=_ROUTE_RTOL):
            raise ArithmeticError(
                f"route disagreement at q={q}, j={j}: "
                f"psi={psi_route!r} vs {value!r}")
    even_vals.setflags(write=False)
    odd_vals.setflags(write=False)
    return LValueSpectrum(q=q, even_values=even_vals, odd_values=odd_vals)
