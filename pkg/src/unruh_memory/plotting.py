"""Generate standalone matplotlib scripts from sweep CSVs.

Nothing is rendered here. The emitted script embeds the data it needs, so it
runs anywhere matplotlib is installed and the CSV is no longer required.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction
from pathlib import Path

from .channels import ChannelKind
from .sweep import CSV_HEADER

LINE_STYLES = ("-", "--", ":", "-.")
AXIS_LABELS = {"p": "p", "mu": r"$\mu$", "r": "r"}


class PlotInputError(ValueError):
    pass


def pi_label(x: float) -> str:
    """``0``, ``π/6``, ``3π/8`` ... for simple multiples of pi, else a decimal."""
    if x == 0:
        return "0"
    frac = Fraction(x / math.pi).limit_denominator(1000)
    if abs(float(frac) * math.pi - x) > 1e-9:
        return f"{x:.4g}"
    num = "" if frac.numerator == 1 else str(frac.numerator)
    return f"{num}π" if frac.denominator == 1 else f"{num}π/{frac.denominator}"


def _read(csv_path) -> list[dict]:
    with Path(csv_path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        missing = [c for c in CSV_HEADER if c not in header]
        if missing:
            raise PlotInputError(f"{csv_path}: CSV header lacks column(s) {', '.join(missing)}")
        rows = [row for row in reader if row["channel"] and not row["channel"].startswith("#")]
    if not rows:
        raise PlotInputError(f"{csv_path}: no data rows")
    return rows


def _layout(rows):
    """Pick the series key and the x axis from what varies in the data."""
    distinct = {k: sorted({float(r[k]) for r in rows}) for k in ("p", "mu", "r")}
    channels = list(dict.fromkeys(r["channel"] for r in rows))
    if len(channels) > 1:
        series_key = "channel"
        candidates = [k for k in ("p", "mu", "r") if len(distinct[k]) > 1]
    else:
        varying = [k for k in ("p", "mu", "r") if len(distinct[k]) > 1]
        # the axis with fewest distinct values labels the series
        series_key = min(varying, key=lambda k: len(distinct[k])) if len(varying) > 1 else "channel"
        candidates = [k for k in varying if k != series_key]
    if len(candidates) != 1:
        raise PlotInputError("cannot infer a single x axis from the CSV")
    return series_key, candidates[0]


def _series_label(key: str, value: str) -> str:
    if key == "channel":
        return ChannelKind.parse(value).label
    if key == "r":
        return f"r={pi_label(float(value))}"
    return f"{AXIS_LABELS[key].strip('$')}={float(value):g}"


def emit_plot_script(figure_csv_path, out_path) -> Path:
    rows = _read(figure_csv_path)
    series_key, x_key = _layout(rows)
    series: dict[str, tuple[list, list]] = {}
    for row in rows:
        xs, ys = series.setdefault(row[series_key], ([], []))
        xs.append(float(row[x_key]))
        ys.append(float(row["concurrence"]))

    lines = [
        "#!/usr/bin/env python3",
        f'"""Concurrence curves from {Path(figure_csv_path).name}."""',
        "import matplotlib.pyplot as plt",
        "",
        "SERIES = [",
    ]
    for i, (key, (xs, ys)) in enumerate(series.items()):
        style = LINE_STYLES[i % len(LINE_STYLES)]
        lines.append(f"    ({_series_label(series_key, key)!r}, {style!r}, {xs!r}, {ys!r}),")
    lines += [
        "]",
        "",
        "fig, ax = plt.subplots(figsize=(5, 4))",
        "for label, style, xs, ys in SERIES:",
        "    ax.plot(xs, ys, linestyle=style, color='k', label=label)",
        f"ax.set_xlabel({AXIS_LABELS[x_key]!r})",
        "ax.set_ylabel('concurrence')",
        "ax.set_ylim(0, 1.02)",
        "ax.legend()",
        "fig.tight_layout()",
        "",
        "if __name__ == '__main__':",
        "    import sys",
        "    if len(sys.argv) > 1:",
        "        fig.savefig(sys.argv[1])",
        "    else:",
        "        plt.show()",
        "",
    ]
    out_path = Path(out_path)
    out_path.write_text("\n".join(lines))
    return out_path
