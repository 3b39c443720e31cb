"""Command-line entry point.

Every flag can also be supplied through an environment variable with the
``L1CHI_`` prefix (L1CHI_MIN, L1CHI_MAX, L1CHI_BITS, ...).

Exit status: 0 clean, 1 usage error, 2 theorem-flag failure,
3 numerical failure.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from .batch import (DEFAULT_N_BITS, EXIT_USAGE, MODES, CheckpointMismatchError,
                    RunConfig, run_range)
from .plots import PLOT_KINDS, emit_plot_script
from .zeta import build_zeta_table, default_k_max, dump_table, load_table


@click.command(name="l1chi")
@click.option("--min", "q_min", type=int, default=3, show_default=True,
              envvar="L1CHI_MIN", help="Smallest prime of the range.")
@click.option("--max", "q_max", type=int, default=1000, show_default=True,
              envvar="L1CHI_MAX", help="Largest prime of the range.")
@click.option("--bits", type=int, default=DEFAULT_N_BITS, show_default=True,
              envvar="L1CHI_BITS", help="Target precision in binary digits.")
@click.option("--mode", type=click.Choice(MODES), default="fft",
              show_default=True, envvar="L1CHI_MODE",
              help="fft: decimated FFT pipeline; direct: trivially-summed "
                   "oracle; both: run both and cross-check.")
@click.option("--workers", type=int, default=1, show_default=True,
              envvar="L1CHI_WORKERS", help="Parallel worker processes.")
@click.option("--out", type=click.Path(path_type=Path), default=Path("l1chi-out"),
              show_default=True, envvar="L1CHI_OUT", help="Output directory.")
@click.option("--checkpoint-every", type=int, default=100, show_default=True,
              envvar="L1CHI_CHECKPOINT_EVERY",
              help="Primes per checkpoint flush.")
@click.option("--resume", is_flag=True, envvar="L1CHI_RESUME",
              help="Continue a previous run in --out.")
@click.option("--plot", "plot_kinds", type=click.Choice(PLOT_KINDS),
              multiple=True, envvar="L1CHI_PLOT",
              help="Emit a gnuplot script for this figure family "
                   "(repeatable).")
@click.option("--zeta-cache", type=click.Path(path_type=Path), default=None,
              envvar="L1CHI_ZETA_CACHE",
              help="Load the zeta table from this file if present, "
                   "else build it and store it there.")
@click.option("--verbose", is_flag=True, envvar="L1CHI_VERBOSE",
              help="Log per-stage progress.")
def cli(q_min: int, q_max: int, bits: int, mode: str, workers: int, out: Path,
        checkpoint_every: int, resume: bool, plot_kinds: tuple[str, ...],
        zeta_cache: Path | None, verbose: bool) -> None:
    """Compute |L(1,chi)| extrema for odd primes in [MIN, MAX] and verify
    the Littlewood-type inequality battery."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        config = RunConfig(q_min=q_min, q_max=q_max, n_bits=bits, mode=mode,
                           workers=workers, out_dir=out,
                           checkpoint_every=checkpoint_every)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    table = None
    if zeta_cache is not None:
        if zeta_cache.exists():
            table = load_table(zeta_cache)
            if table.n_bits != bits or table.k_max < default_k_max(bits):
                raise click.UsageError(
                    f"zeta cache {zeta_cache} was built for different "
                    f"parameters (n_bits={table.n_bits}, k_max={table.k_max})")
        else:
            table = build_zeta_table(default_k_max(bits), bits)
            dump_table(table, zeta_cache)

    try:
        result = run_range(config, resume=resume, table=table)
    except CheckpointMismatchError as exc:
        raise click.UsageError(str(exc))

    click.echo(result.summary)
    for kind in plot_kinds:
        csv_name = "mq.csv" if kind.startswith(("m", "LLI")) else "Mq.csv"
        script = emit_plot_script(config.out_dir / csv_name, kind)
        click.echo(f"plot script: {script}")
    sys.exit(result.exit_code)


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.Abort:
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
