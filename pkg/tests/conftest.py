import sys
from pathlib import Path

import numpy as np
import pytest

from l1chi import PrecisionBudget, build_zeta_table, default_k_max, dump_table

DATA_DIR = Path(__file__).parent / "data"

sys.path.insert(0, str(DATA_DIR))

N_BITS = 50


@pytest.fixture(scope="session")
def table():
    return build_zeta_table(default_k_max(N_BITS), N_BITS)


@pytest.fixture(scope="session")
def budget():
    return PrecisionBudget(N_BITS)


@pytest.fixture(scope="session")
def zeta_cache_file(table, tmp_path_factory):
    """Shared on-disk zeta table so CLI subprocesses skip the build."""
    path = tmp_path_factory.mktemp("zeta") / "zeta50.txt"
    dump_table(table, path)
    return path


@pytest.fixture(scope="session")
def reference_extrema():
    """30-digit reference M_q/m_q for every odd prime q <= 1000."""
    rows = {}
    for line in (DATA_DIR / "extrema_reference.csv").read_text().splitlines()[1:]:
        q, mq, smq = line.split(",")
        rows[int(q)] = (float(mq), float(smq))
    return rows


@pytest.fixture(scope="session")
def golden_grid():
    """(x, log_gamma, psi) arrays from the mpmath-generated grid."""
    xs, lg, ps = [], [], []
    for line in (DATA_DIR / "golden_unit_grid.csv").read_text().splitlines()[1:]:
        a, b, c = line.split(",")
        xs.append(float.fromhex(a))
        lg.append(float(b))
        ps.append(float(c))
    return np.array(xs), np.array(lg), np.array(ps)
