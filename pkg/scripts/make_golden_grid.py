#!/usr/bin/env python3
"""Generate the golden grid for the special-function accuracy gate.

Evaluates log Gamma and digamma with mpmath (arbitrary precision,
Lanczos/Stirling-based internals independent of this package's zeta
series) on 1000 points of (0,1) and freezes the results to
tests/data/golden_unit_grid.csv.  Each x is the exact IEEE double
nearest i/1001; it is stored as a hex float so the grid round-trips
bit-exactly.

Also regenerates tests/data/golden_scalars.py with a handful of frozen
oracle values used by the unit tests, including zeta values produced by
an accelerated alternating series (10^4 partial sums of the eta series
followed by repeated averaging) that is independent of both the
package's table builder and of mpmath.zeta.

Run from the repository root:  python scripts/make_golden_grid.py
"""

from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"


def zeta_alternating_oracle(k: int, nterms: int = 10**4, levels: int = 40) -> mp.mpf:
    """zeta(k) from eta-series partial sums with repeated averaging."""
    rows = []
    s = mp.mpf(0)
    for n in range(1, nterms + levels + 1):
        t = mp.mpf(n) ** (-k)
        s += t if n % 2 == 1 else -t
        if n >= nterms:
            rows.append(s)
    while len(rows) > 1:
        rows = [(a + b) / 2 for a, b in zip(rows, rows[1:])]
    return rows[0] / (1 - mp.mpf(2) ** (1 - k))


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    lines = ["x_hex,log_gamma,psi"]
    for i in range(1, 1001):
        x = float(i) / 1001.0
        mx = mp.mpf(x)  # exact binary value of the double
        lg = mp.loggamma(mx)
        ps = mp.digamma(mx)
        lines.append(f"{x.hex()},{mp.nstr(lg, 25)},{mp.nstr(ps, 25)}")
    (DATA / "golden_unit_grid.csv").write_text("\n".join(lines) + "\n")

    scalars = {
        "ZETA3": zeta_alternating_oracle(3),
        "ZETA5": zeta_alternating_oracle(5),
        "LOG_GAMMA_03": mp.loggamma(mp.mpf(0.3)),
        "PSI_03": mp.digamma(mp.mpf(0.3)),
        "EULER_GAMMA": mp.euler,
        "LOG_PI_SQRT2": mp.log(mp.pi * mp.sqrt(2)),
        "F_AT_1E7": (mp.log(mp.log(mp.mpf(10) ** 7)) - mp.log(2) + mp.mpf(1) / 2
                     + 1 / mp.log(mp.log(mp.mpf(10) ** 7))),
    }
    body = ['"""Frozen oracle values; regenerate with scripts/make_golden_grid.py."""', ""]
    for name, value in scalars.items():
        body.append(f"{name} = {mp.nstr(value, 25)}")
    body.append("")
    (DATA / "golden_scalars.py").write_text("\n".join(body))
    print(f"wrote {DATA / 'golden_unit_grid.csv'} and {DATA / 'golden_scalars.py'}")


if __name__ == "__main__":
    main()
