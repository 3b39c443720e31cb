"""Batch driver: enumerate primes, run the per-prime pipeline in parallel,
persist CSV results with checkpoint/resume, and summarize.

Output layout (inside the configured directory):

    Mq.csv          header ``q,Mq`` then one row per prime, ascending q
    mq.csv          header ``q,mq`` likewise
    checkpoint.txt  config hash + last prime whose row is durably written

Values are printed with 19 significant digits, wide enough to round-trip
an 80-bit extended significand.  Rows are emitted strictly in ascending
q regardless of worker completion order, so identical configurations
produce byte-identical CSVs for any worker count.  On resume the CSVs
are truncated back to the checkpoint and the run continues; the final
files match an uninterrupted run byte for byte.
"""

from __future__ import annotations

import hashlib
import logging
import math
import multiprocessing
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds
from .characters import DIRECT_ORACLE_CAP, l_values, l_values_direct
from .primes import enumerate_primes
from .series import PrecisionBudget
from .zeta import ZetaTable, build_zeta_table, default_k_max

logger = logging.getLogger(__name__)

MODES = ("fft", "direct", "both")

# Default precision: 50 bits against the native 53-bit significand.
DEFAULT_N_BITS = 50

MQ_HEADER = "q,Mq"
SMALL_MQ_HEADER = "q,mq"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_THEOREM_FAILURE = 2
EXIT_NUMERICAL_FAILURE = 3


class CheckpointMismatchError(RuntimeError):
    """Resume attempted against a checkpoint from a different config."""


@dataclass(frozen=True)
class RunConfig:
    q_min: int
    q_max: int
    n_bits: int = DEFAULT_N_BITS
    mode: str = "fft"
    workers: int = 1
    out_dir: Path = Path("l1chi-out")
    checkpoint_every: int = 100

    def __post_init__(self) -> None:
        if not 3 <= self.q_min <= self.q_max:
            raise ValueError(
                f"range must satisfy 3 <= q_min <= q_max, got [{self.q_min}, {self.q_max}]")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode in ("direct", "both") and self.q_max > DIRECT_ORACLE_CAP:
            raise ValueError(
                f"mode={self.mode!r} requires q_max <= {DIRECT_ORACLE_CAP} "
                f"(the direct oracle is O(q^2)), got {self.q_max}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.checkpoint_every < 1:
            raise ValueError(f"checkpoint_every must be >= 1, got {self.checkpoint_every}")
        object.__setattr__(self, "out_dir", Path(self.out_dir))

    def config_hash(self) -> str:
        # Only result-affecting fields. Worker count and checkpoint cadence
        # may change between resumes without invalidating prior rows.
        key = f"{self.q_min}:{self.q_max}:{self.n_bits}:{self.mode}"
        return hashlib.sha256(key.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Checkpoint:
    last_completed_prime: int
    config_hash: str
    records_written: int

    def save(self, path: Path) -> None:
        tmp = path.with_suffix(".tmp")
        tmp.write_text(
            f"config_hash {self.config_hash}\n"
            f"last_completed_prime {self.last_completed_prime}\n"
            f"records_written {self.records_written}\n")
        os.replace(tmp, path)

    @staticmethod
    def load(path: Path) -> "Checkpoint":
        fields: dict[str, str] = {}
        for line in Path(path).read_text().splitlines():
            parts = line.split()
            if len(parts) == 2:
                fields[parts[0]] = parts[1]
        return Checkpoint(
            last_completed_prime=int(fields["last_completed_prime"]),
            config_hash=fields["config_hash"],
            records_written=int(fields["records_written"]),
        )


@dataclass
class RunResult:
    exit_code: int
    rows_written: int
    summary: str
    theorem_failures: list[tuple[int, str]]
    numerical_failures: list[int]


# --- per-prime work -------------------------------------------------------

_WORKER_TABLE: ZetaTable | None = None
_WORKER_BUDGET: PrecisionBudget | None = None
_WORKER_MODE: str = "fft"

# FFT-vs-direct cross-check tolerance in 'both' mode.
_MODE_BOTH_RTOL = 1e-9


def _init_worker(n_bits: int, mode: str, table: ZetaTable | None) -> None:
    global _WORKER_TABLE, _WORKER_BUDGET, _WORKER_MODE
    _WORKER_BUDGET = PrecisionBudget(n_bits)
    _WORKER_MODE = mode
    _WORKER_TABLE = table if table is not None else build_zeta_table(
        default_k_max(n_bits), n_bits)


def _compute_one(q: int) -> tuple[int, float, float, bool]:
    """Return (q, M_q, m_q, ok). NaNs with ok=False flag numerical failure."""
    table, budget, mode = _WORKER_TABLE, _WORKER_BUDGET, _WORKER_MODE
    try:
        if mode == "direct":
            spectrum = l_values_direct(q, budget, table)
        else:
            spectrum = l_values(q, budget, table)
            if mode == "both":
                ref = l_values_direct(q, budget, table)
                rel = np.max(np.abs(spectrum.all_values() - ref.all_values())
                             / np.abs(ref.all_values()))
                if not rel < _MODE_BOTH_RTOL:
                    raise ArithmeticError(
                        f"fft/direct disagreement {rel:.3e} at q={q}")
        values = spectrum.all_values()
        if not np.isfinite(values).all():
            raise ArithmeticError(f"non-finite spectrum entry at q={q}")
        ext = bounds.extrema(spectrum)
        return q, ext.M, ext.m, True
    except ArithmeticError as exc:
        logger.error("numerical failure at q=%d: %s", q, exc)
        return q, math.nan, math.nan, False


# --- CSV plumbing ----------------------------------------------------------

def _format_row(q: int, value: float) -> str:
    return f"{q},{value:.18e}\n"


def _csv_paths(out_dir: Path) -> tuple[Path, Path]:
    return out_dir / "Mq.csv", out_dir / "mq.csv"


def _truncate_csv(path: Path, header: str, last_prime: int) -> int:
    """Drop rows past the checkpoint (and any torn trailing line)."""
    kept: list[str] = []
    if path.exists():
        for line in path.read_text().splitlines():
            if line == header:
                continue
            parts = line.split(",")
            try:
                q = int(parts[0])
                float(parts[1])
            except (ValueError, IndexError):
                continue  # torn write
            if q <= last_prime:
                kept.append(line)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(header + "\n" + "".join(r + "\n" for r in kept))
    os.replace(tmp, path)
    return len(kept)


def read_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """(q, value) arrays from one of the output CSVs."""
    qs: list[int] = []
    vals: list[float] = []
    for line in Path(path).read_text().splitlines()[1:]:
        if not line:
            continue
        a, b = line.split(",")
        qs.append(int(a))
        vals.append(float(b))
    return np.array(qs, dtype=np.int64), np.array(vals)


# --- summary and flag evaluation -------------------------------------------

def _summarize(out_dir: Path, guard: float = bounds.DEFAULT_GUARD_BAND,
               ) -> tuple[str, list[tuple[int, str]], list[int]]:
    """Summary text, theorem-flag failures and NaN-row primes from the CSVs."""
    mq_path, smq_path = _csv_paths(out_dir)
    qs, mvals = read_csv(mq_path)
    qs2, svals = read_csv(smq_path)
    if not np.array_equal(qs, qs2):
        raise RuntimeError("Mq.csv and mq.csv disagree on the prime set")
    lines = [f"primes: {qs.size}  range: [{qs[0]}, {qs[-1]}]" if qs.size else "primes: 0"]
    failures: list[tuple[int, str]] = []
    numerical_failures: list[int] = []
    if qs.size:
        ok = np.isfinite(mvals) & np.isfinite(svals)
        numerical_failures = [int(v) for v in qs[~ok]]
        qs_ok, mvals_ok, svals_ok = qs[ok], mvals[ok], svals[ok]
        ll = np.log(np.log(qs_ok.astype(np.float64)))
        f = ll - math.log(2.0) + 0.5 + 1.0 / ll
        g = f + 14.0 * ll / np.log(qs_ok.astype(np.float64))

        def argline(tag, series):
            imin, imax = int(series.argmin()), int(series.argmax())
            return (f"{tag}: min {series[imin]:.9f} at q={qs_ok[imin]}, "
                    f"max {series[imax]:.9f} at q={qs_ok[imax]}")

        lines.append(argline("M_q", mvals_ok))
        lines.append(argline("m_q", svals_ok))
        lines.append(argline("M'_q = M_q/f(q)", mvals_ok / f))
        lines.append(argline("m'_q = m_q*g(q)", svals_ok * g))
        lines.append(argline("M''_q = M_q/loglog q", mvals_ok / ll))
        lines.append(argline("m''_q = m_q*loglog q", svals_ok * ll))

        for q, M, m in zip(qs_ok.tolist(), mvals_ok.tolist(), svals_ok.tolist()):
            f_q, g_q = bounds.normalizers(q)
            uli, lli = bounds.littlewood_indices(q, M, m)
            record = bounds.BoundRecord(
                q=q, M_q=M, m_q=m, M_parity="", M_bin=0, m_parity="", m_bin=0,
                f_q=f_q, g_q=g_q, uli_max=uli, lli_min=lli)
            for name, flag in bounds.check_theorems(record, guard).items():
                if flag.failed:
                    failures.append((q, name))
                elif flag.marginal:
                    lines.append(f"marginal: {name} at q={q} (margin {flag.margin:.3e})")
    if failures:
        lines.append(f"THEOREM FLAG FAILURES: {len(failures)}")
        for q, name in failures[:20]:
            lines.append(f"  q={q}: {name}")
    else:
        lines.append("theorem battery: all applicable inequalities hold")
    if numerical_failures:
        lines.append(f"NUMERICAL FAILURES at q in {numerical_failures}")
    return "\n".join(lines), failures, numerical_failures


# --- the driver ------------------------------------------------------------

def run_range(config: RunConfig, resume: bool = False,
              table: ZetaTable | None = None,
              max_primes_this_run: int | None = None) -> RunResult:
    """Execute (or continue) a batch run; see the module docstring.

    ``max_primes_this_run`` stops cleanly after that many new primes,
    leaving a valid checkpoint (used for incremental operation and for
    exercising resume in tests).
    """
    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    ckpt_path = out_dir / "checkpoint.txt"
    mq_path, smq_path = _csv_paths(out_dir)

    last_done = 0
    rows_written = 0
    if ckpt_path.exists():
        if not resume:
            raise CheckpointMismatchError(
                f"{out_dir} already holds a run (checkpoint present); "
                f"pass resume=True or choose a fresh directory")
        ckpt = Checkpoint.load(ckpt_path)
        if ckpt.config_hash != config.config_hash():
            raise CheckpointMismatchError(
                "checkpoint was written by a different configuration; refusing to resume")
        last_done = ckpt.last_completed_prime
        kept_m = _truncate_csv(mq_path, MQ_HEADER, last_done)
        kept_s = _truncate_csv(smq_path, SMALL_MQ_HEADER, last_done)
        rows_written = min(kept_m, kept_s)
    else:
        mq_path.write_text(MQ_HEADER + "\n")
        smq_path.write_text(SMALL_MQ_HEADER + "\n")

    all_primes = enumerate_primes(config.q_min, config.q_max)
    todo = [q for q in all_primes if q > last_done]
    if max_primes_this_run is not None:
        todo = todo[:max_primes_this_run]

    if todo:
        _process(config, todo, table, mq_path, smq_path, ckpt_path, rows_written)
        rows_written += len(todo)
    else:
        logger.info("nothing to do; run already complete")

    summary, failures, numerical_failures = _summarize(out_dir)

    if numerical_failures:
        code = EXIT_NUMERICAL_FAILURE
    elif failures:
        code = EXIT_THEOREM_FAILURE
    else:
        code = EXIT_OK
    return RunResult(exit_code=code, rows_written=rows_written,
                     summary=summary, theorem_failures=failures,
                     numerical_failures=numerical_failures)


def _process(config: RunConfig, todo: list[int], table: ZetaTable | None,
             mq_path: Path, smq_path: Path, ckpt_path: Path,
             rows_already: int) -> None:
    """Compute todo-primes, write rows in ascending q, checkpoint as we go."""
    pending: dict[int, tuple[float, float, bool]] = {}
    next_idx = 0
    since_flush = 0
    rows_written = rows_already

    mq_f = mq_path.open("a")
    smq_f = smq_path.open("a")

    def flush_checkpoint(last_prime: int) -> None:
        mq_f.flush()
        os.fsync(mq_f.fileno())
        smq_f.flush()
        os.fsync(smq_f.fileno())
        Checkpoint(last_prime, config.config_hash(), rows_written).save(ckpt_path)

    def drain() -> None:
        nonlocal next_idx, since_flush, rows_written
        while next_idx < len(todo) and todo[next_idx] in pending:
            q = todo[next_idx]
            M, m, _ok = pending.pop(q)
            mq_f.write(_format_row(q, M))
            smq_f.write(_format_row(q, m))
            rows_written += 1
            next_idx += 1
            since_flush += 1
            if since_flush >= config.checkpoint_every:
                flush_checkpoint(q)
                since_flush = 0

    try:
        if config.workers == 1:
            _init_worker(config.n_bits, config.mode, table)
            for q in todo:
                q, M, m, ok = _compute_one(q)
                pending[q] = (M, m, ok)
                drain()
        else:
            if table is None:
                table = build_zeta_table(default_k_max(config.n_bits), config.n_bits)
            chunk = max(1, min(64, len(todo) // (config.workers * 8) or 1))
            with multiprocessing.Pool(
                    config.workers, initializer=_init_worker,
                    initargs=(config.n_bits, config.mode, table)) as pool:
                for q, M, m, ok in pool.imap_unordered(_compute_one, todo, chunk):
                    pending[q] = (M, m, ok)
                    drain()
        if next_idx != len(todo):
            raise RuntimeError("worker pool ended before all primes completed")
        flush_checkpoint(todo[-1])
    finally:
        mq_f.close()
        smq_f.close()
