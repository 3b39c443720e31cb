"""Self-contained gnuplot scripts for the scatter-plot families.

Each kind pairs one of the output CSVs with the guide lines of the
corresponding figure family:

    Mq             raw maxima with 0.62*L2*f(q), 0.325*L2*f(q),
                   0.66*L2*loglog q, 0.4*L2*loglog q
    mq             raw minima with 5*L1/g(q), 2.35*L1/g(q),
                   2*L1/loglog q, 1.13*L1/loglog q
    Mq_normalized  M_q/f(q)      with 0.62*L2, 0.325*L2
    mq_normalized  m_q*g(q)      with 5*L1, 2.35*L1
    ULI            M_q/loglog q  with 0.66*L2, 0.4*L2
    LLI            m_q*loglog q  with 2*L1, 1.13*L1
"""

from __future__ import annotations

from pathlib import Path

from .bounds import L1, L2

PLOT_KINDS = ("Mq", "mq", "Mq_normalized", "mq_normalized", "ULI", "LLI")

_SPECS: dict[str, dict] = {
    "Mq": dict(
        ylabel="M_q",
        ycol="$2",
        guides=[("0.62*L2*f(x)", "blue"), ("0.325*L2*f(x)", "red"),
                ("0.66*L2*llg(x)", "green"), ("0.4*L2*llg(x)", "orange")],
    ),
    "mq": dict(
        ylabel="m_q",
        ycol="$2",
        guides=[("5*L1/g(x)", "blue"), ("2.35*L1/g(x)", "red"),
                ("2*L1/llg(x)", "green"), ("1.13*L1/llg(x)", "orange")],
    ),
    "Mq_normalized": dict(
        ylabel="M_q / f(q)",
        ycol="$2/f($1)",
        guides=[("0.62*L2", "blue"), ("0.325*L2", "red")],
    ),
    "mq_normalized": dict(
        ylabel="m_q * g(q)",
        ycol="$2*g($1)",
        guides=[("5*L1", "blue"), ("2.35*L1", "red")],
    ),
    "ULI": dict(
        ylabel="M_q / loglog q",
        ycol="$2/llg($1)",
        guides=[("0.66*L2", "green"), ("0.4*L2", "orange")],
    ),
    "LLI": dict(
        ylabel="m_q * loglog q",
        ycol="$2*llg($1)",
        guides=[("2*L1", "green"), ("1.13*L1", "orange")],
    ),
}


def _has_data_rows(csv_path: Path) -> bool:
    lines = csv_path.read_text().splitlines()
    return any(line and not line[0].isalpha() for line in lines[1:])


def emit_plot_script(csv_path: str | Path, kind: str,
                     out_path: str | Path | None = None) -> Path:
    """Write a gnuplot script reproducing one figure family.

    An empty CSV (header only) yields a script with guide lines and no
    scatter series.
    """
    csv_path = Path(csv_path)
    if kind not in _SPECS:
        raise ValueError(f"kind must be one of {PLOT_KINDS}, got {kind!r}")
    if not csv_path.exists():
        raise FileNotFoundError(f"CSV not found: {csv_path}")
    spec = _SPECS[kind]
    out_path = Path(out_path) if out_path else csv_path.with_name(f"{kind}.gp")

    series = [
        f"{expr} with lines lc rgb '{color}' title '{expr}'"
        for expr, color in spec["guides"]
    ]
    if _has_data_rows(csv_path):
        series.append(
            f"'{csv_path.name}' every ::1 using 1:({spec['ycol']}) "
            f"with points pt 7 ps 0.2 lc rgb 'black' title '{spec['ylabel']}'")

    text = "\n".join([
        f"# {kind} scatter plot with guide lines",
        "set datafile separator ','",
        f"set terminal pngcairo size 1400,900",
        f"set output '{kind}.png'",
        "set logscale x",
        f"set xlabel 'q'",
        f"set ylabel '{spec['ylabel']}'",
        f"L1 = {L1!r}",
        f"L2 = {L2!r}",
        "llg(x) = log(log(x))",
        "f(x) = llg(x) - log(2) + 0.5 + 1.0/llg(x)",
        "g(x) = f(x) + 14.0*llg(x)/log(x)",
        "plot \\",
        ", \\\n".join("    " + s for s in series),
        "",
    ])
    out_path.write_text(text)
    return out_path
