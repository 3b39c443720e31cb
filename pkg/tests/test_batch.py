import math
import os
import subprocess
import sys

import numpy as np
import pytest

from l1chi import (RunConfig, bound_record, emit_plot_script, l_values,
                   run_range)
from l1chi.batch import (EXIT_NUMERICAL_FAILURE, EXIT_OK,
                         EXIT_THEOREM_FAILURE, Checkpoint,
                         CheckpointMismatchError, read_csv)
from l1chi.characters import LValueSpectrum


def _run(tmp_path, name, table, **kw):
    out = tmp_path / name
    resume = kw.pop("resume", False)
    defaults = dict(q_min=3, q_max=200, n_bits=50, mode="fft", workers=1,
                    out_dir=out, checkpoint_every=10)
    defaults.update(kw)
    config = RunConfig(**defaults)
    result = run_range(config, table=table, resume=resume)
    return out, result


def _read_bytes(out):
    return (out / "Mq.csv").read_bytes(), (out / "mq.csv").read_bytes()


def test_run_produces_ordered_csvs(tmp_path, table, budget):
    out, result = _run(tmp_path, "base", table)
    assert result.exit_code == EXIT_OK
    qs, mvals = read_csv(out / "Mq.csv")
    qs2, svals = read_csv(out / "mq.csv")
    assert np.array_equal(qs, qs2)
    assert np.all(np.diff(qs) > 0)
    assert qs[0] == 3 and qs[-1] == 199
    assert (out / "Mq.csv").read_text().splitlines()[0] == "q,Mq"
    # spot-check against the library path
    rec = bound_record(101, l_values(101, budget, table))
    i = int(np.searchsorted(qs, 101))
    assert mvals[i] == pytest.approx(rec.M_q, abs=1e-15)
    assert svals[i] == pytest.approx(rec.m_q, abs=1e-15)


def test_row_format_19_significant_digits(tmp_path, table):
    out, _ = _run(tmp_path, "fmt", table, q_max=20)
    row = (out / "Mq.csv").read_text().splitlines()[1]
    q, value = row.split(",")
    assert q == "3"
    mantissa = value.split("e")[0].replace(".", "").lstrip("-")
    assert len(mantissa) == 19


def test_worker_count_invariance(tmp_path, table):
    out1, _ = _run(tmp_path, "w1", table, workers=1)
    out2, _ = _run(tmp_path, "w2", table, workers=2)
    assert _read_bytes(out1) == _read_bytes(out2)


def test_incremental_resume_is_byte_identical(tmp_path, table):
    ref, _ = _run(tmp_path, "ref", table)

    out = tmp_path / "inc"
    config = RunConfig(q_min=3, q_max=200, out_dir=out, checkpoint_every=10)
    first = run_range(config, table=table, max_primes_this_run=17)
    assert first.rows_written == 17
    ckpt = Checkpoint.load(out / "checkpoint.txt")
    assert ckpt.records_written == 17
    second = run_range(config, table=table, resume=True)
    assert second.exit_code == EXIT_OK
    assert _read_bytes(out) == _read_bytes(ref)


def test_resume_with_changed_config_refused(tmp_path, table):
    out = tmp_path / "cfg"
    config = RunConfig(q_min=3, q_max=100, out_dir=out)
    run_range(config, table=table, max_primes_this_run=5)
    altered = RunConfig(q_min=3, q_max=100, n_bits=48, out_dir=out)
    with pytest.raises(CheckpointMismatchError):
        run_range(altered, resume=True)


def test_fresh_run_refuses_existing_checkpoint(tmp_path, table):
    out, _ = _run(tmp_path, "exists", table, q_max=30)
    config = RunConfig(q_min=3, q_max=30, out_dir=out)
    with pytest.raises(CheckpointMismatchError):
        run_range(config, table=table)


def test_resume_completed_run_is_noop(tmp_path, table):
    out, first = _run(tmp_path, "noop", table, q_max=100)
    before = _read_bytes(out)
    config = RunConfig(q_min=3, q_max=100, out_dir=out)
    again = run_range(config, table=table, resume=True)
    assert again.exit_code == EXIT_OK
    assert again.summary  # summary re-emitted
    assert _read_bytes(out) == before


def test_resume_truncates_rows_past_checkpoint(tmp_path, table):
    ref, _ = _run(tmp_path, "truncref", table, q_max=100)
    out = tmp_path / "torn"
    config = RunConfig(q_min=3, q_max=100, out_dir=out, checkpoint_every=5)
    run_range(config, table=table, max_primes_this_run=10)
    # simulate rows flushed beyond the checkpoint plus a torn final line
    with (out / "Mq.csv").open("a") as f:
        f.write("9973,1.23e0\n217,garb")
    with (out / "mq.csv").open("a") as f:
        f.write("9973,0.5e0\n")
    run_range(config, table=table, resume=True)
    assert _read_bytes(out) == _read_bytes(ref)


def test_invalid_configs():
    with pytest.raises(ValueError):
        RunConfig(q_min=10, q_max=5)
    with pytest.raises(ValueError):
        RunConfig(q_min=2, q_max=5)
    with pytest.raises(ValueError):
        RunConfig(q_min=3, q_max=100, mode="nope")
    with pytest.raises(ValueError):
        RunConfig(q_min=3, q_max=6000, mode="direct")
    with pytest.raises(ValueError):
        RunConfig(q_min=3, q_max=100, workers=0)
    with pytest.raises(ValueError):
        RunConfig(q_min=3, q_max=100, checkpoint_every=0)


def test_mode_direct_and_both(tmp_path, table):
    out_d, res_d = _run(tmp_path, "direct", table, q_max=60, mode="direct")
    out_b, res_b = _run(tmp_path, "bothm", table, q_max=60, mode="both")
    assert res_d.exit_code == EXIT_OK and res_b.exit_code == EXIT_OK
    _, md = read_csv(out_d / "Mq.csv")
    _, mb = read_csv(out_b / "Mq.csv")
    assert np.allclose(md, mb, rtol=1e-11)


def test_summary_extrema_locations(tmp_path, table):
    out, result = _run(tmp_path, "summ", table, q_max=200)
    assert "M_q: min 0.604599788 at q=3" in result.summary
    assert "max 0.618351935 at q=11" in result.summary


def test_numerical_failure_recorded_and_surfaced(tmp_path, table, monkeypatch):
    import l1chi.batch as batch

    real = batch.l_values

    def poisoned(q, budget, tbl, **kw):
        spec = real(q, budget, tbl, **kw)
        if q == 23:
            bad = spec.odd_values.copy()
            bad[0] = math.nan
            return LValueSpectrum(q=q, even_values=spec.even_values,
                                  odd_values=bad)
        return spec

    monkeypatch.setattr(batch, "l_values", poisoned)
    out = tmp_path / "nanrun"
    config = RunConfig(q_min=3, q_max=60, out_dir=out)
    result = run_range(config, table=table)
    assert result.exit_code == EXIT_NUMERICAL_FAILURE
    assert result.numerical_failures == [23]
    qs, mvals = read_csv(out / "Mq.csv")
    assert qs.tolist() == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert math.isnan(mvals[7])  # q=23 row kept, flagged
    assert np.isfinite(mvals[8:]).all()  # run continued past the failure


def test_theorem_failure_exit_code(tmp_path, table, monkeypatch):
    import l1chi.bounds as bounds_mod

    real = bounds_mod.check_theorems

    def strict(record, guard=bounds_mod.DEFAULT_GUARD_BAND):
        flags = dict(real(record, guard))
        if record.q == 31:
            flags["M_upper"] = bounds_mod.Flag(
                "M_upper", bounds_mod.FlagStatus.FAIL, -1.0, False)
        return flags

    monkeypatch.setattr(bounds_mod, "check_theorems", strict)
    out = tmp_path / "thmfail"
    result = run_range(RunConfig(q_min=3, q_max=60, out_dir=out), table=table)
    assert result.exit_code == EXIT_THEOREM_FAILURE
    assert (31, "M_upper") in result.theorem_failures


# --- plot scripts -----------------------------------------------------------

def test_plot_script_mq_guides(tmp_path, table):
    out, _ = _run(tmp_path, "plots", table, q_max=100)
    script = emit_plot_script(out / "Mq.csv", "Mq")
    text = script.read_text()
    assert text.count("with lines") == 4
    assert "0.62*L2*f(x)" in text and "0.325*L2*f(x)" in text
    assert "0.66*L2*llg(x)" in text and "0.4*L2*llg(x)" in text
    assert "'Mq.csv' every ::1" in text


def test_plot_script_lli_guides(tmp_path, table):
    out, _ = _run(tmp_path, "plots2", table, q_max=100)
    script = emit_plot_script(out / "mq.csv", "LLI")
    text = script.read_text()
    assert "2*L1" in text and "1.13*L1" in text
    assert "$2*llg($1)" in text


def test_plot_script_all_kinds_emit(tmp_path, table):
    out, _ = _run(tmp_path, "allkinds", table, q_max=60)
    from l1chi.plots import PLOT_KINDS
    for kind in PLOT_KINDS:
        csv = out / ("mq.csv" if kind.startswith(("m", "LLI")) else "Mq.csv")
        text = emit_plot_script(csv, kind).read_text()
        assert "plot" in text and "L1 =" in text and "L2 =" in text


def test_plot_script_empty_csv(tmp_path):
    csv = tmp_path / "Mq.csv"
    csv.write_text("q,Mq\n")
    text = emit_plot_script(csv, "Mq").read_text()
    assert "with lines" in text
    assert "every ::1" not in text  # no scatter series


def test_plot_script_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        emit_plot_script(tmp_path / "missing.csv", "Mq")
    csv = tmp_path / "x.csv"
    csv.write_text("q,Mq\n")
    with pytest.raises(ValueError):
        emit_plot_script(csv, "nope")


# --- CLI --------------------------------------------------------------------

def _cli_env(zeta_cache):
    env = os.environ.copy()
    env["L1CHI_ZETA_CACHE"] = str(zeta_cache)
    return env


def test_cli_end_to_end(tmp_path, zeta_cache_file):
    out = tmp_path / "cliout"
    proc = subprocess.run(
        [sys.executable, "-m", "l1chi.cli", "--min", "3", "--max", "100",
         "--out", str(out), "--plot", "Mq", "--plot", "LLI"],
        env=_cli_env(zeta_cache_file), capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "theorem battery: all applicable inequalities hold" in proc.stdout
    assert (out / "Mq.csv").exists() and (out / "mq.csv").exists()
    assert (out / "Mq.gp").exists() and (out / "LLI.gp").exists()


def test_cli_usage_error_exit_1(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "l1chi.cli", "--min", "10", "--max", "5",
         "--out", str(tmp_path / "x")],
        capture_output=True, text=True)
    assert proc.returncode == 1
    assert "q_min" in proc.stderr or "q_min" in proc.stdout


def test_cli_env_overrides(tmp_path, zeta_cache_file):
    out = tmp_path / "envout"
    env = _cli_env(zeta_cache_file)
    env["L1CHI_MAX"] = "30"
    env["L1CHI_OUT"] = str(out)
    proc = subprocess.run([sys.executable, "-m", "l1chi.cli"],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    qs, _ = read_csv(out / "Mq.csv")
    assert qs.tolist() == [3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_cli_resume_mismatch_exit_1(tmp_path, zeta_cache_file, table):
    out = tmp_path / "mismatch"
    config = RunConfig(q_min=3, q_max=100, out_dir=out)
    run_range(config, table=table, max_primes_this_run=3)
    # same range but a different mode: the checkpoint hash refuses it
    proc = subprocess.run(
        [sys.executable, "-m", "l1chi.cli", "--min", "3", "--max", "100",
         "--mode", "direct", "--out", str(out), "--resume"],
        env=_cli_env(zeta_cache_file), capture_output=True, text=True)
    assert proc.returncode == 1
    assert "different configuration" in proc.stderr + proc.stdout
