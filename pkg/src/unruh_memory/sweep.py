"""Parameter sweeps, figure CSVs and the errata report."""

from __future__ import annotations

import csv
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .channels import ChannelKind, ChannelSpec, apply_channel
from .entanglement import (
    ConcurrenceError,
    concurrence,
    concurrence_closed_form,
    crosscheck_point,
)
from .reference import UNPAIRED_ENTRIES, closed_form_lambdas
from .state import R_MAX, check_r, unruh_density_matrix

CSV_HEADER = (
    "channel", "p", "mu", "r", "concurrence", "concurrence_closed_form",
    "trace_residual", "herm_residual",
)
ERRATA_HEADER = ("equation", "channel", "p", "mu", "r", "hermitian", "max_dev")

ALL_KINDS = tuple(ChannelKind)


class SweepError(RuntimeError):
    """A grid point failed; the message carries its coordinates."""

    def __init__(self, kind: ChannelKind, p: float, mu: float, r: float, cause: Exception):
        self.kind, self.p, self.mu, self.r = kind, p, mu, r
        super().__init__(f"channel={kind.code} p={p!r} mu={mu!r} r={r!r}: {cause}")


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# grids


def _check_axis(name: str, values: Sequence[float], lo: float, hi: float) -> tuple[float, ...]:
    vals = tuple(float(v) for v in values)
    if not vals:
        raise ValueError(f"{name} grid is empty")
    for v in vals:
        if not (lo <= v <= hi):
            raise ValueError(f"{name} value {v!r} outside [{lo}, {hi}]")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"{name} grid must be strictly increasing")
    return vals


@dataclass(frozen=True)
class SweepGrid:
    kinds: tuple
    p_values: tuple
    mu_values: tuple
    r_values: tuple

    def __post_init__(self):
        kinds = tuple(k if isinstance(k, ChannelKind) else ChannelKind.parse(k) for k in self.kinds)
        if not kinds:
            raise ValueError("at least one channel is required")
        if len(set(kinds)) != len(kinds):
            raise ValueError("duplicate channel in grid")
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "p_values", _check_axis("p", self.p_values, 0.0, 1.0))
        object.__setattr__(self, "mu_values", _check_axis("mu", self.mu_values, 0.0, 1.0))
        r_vals = tuple(check_r(r) for r in self.r_values)
        object.__setattr__(self, "r_values", _check_axis("r", r_vals, 0.0, R_MAX))

    def __len__(self):
        return len(self.kinds) * len(self.p_values) * len(self.mu_values) * len(self.r_values)

    def points(self):
        """Grid coordinates in row order: channel, then p, mu, r."""
        return product(self.kinds, self.p_values, self.mu_values, self.r_values)


def linspace_steps(n: int, stop: float) -> tuple[float, ...]:
    """``k * stop / n`` for k = 0..n, built so mirrored points are exact."""
    return tuple(k * stop / n for k in range(n + 1))


def standard_grid(kinds: Iterable[ChannelKind] = ALL_KINDS) -> SweepGrid:
    """4 channels x 11 p x 11 mu x 9 r, the default audit grid."""
    return SweepGrid(tuple(kinds), linspace_steps(10, 1.0), linspace_steps(10, 1.0),
                     linspace_steps(8, math.pi / 4))


_PI_EXPR = re.compile(r"^\s*(?:(?P<num>[0-9.]+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>[0-9.]+))?\s*$")


def parse_number(text: str) -> float:
    """Float literal, or a multiple of pi such as ``pi/4`` or ``3*pi/8``."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_EXPR.match(text.lower())
    if not m:
        raise ValueError(f"cannot parse number {text!r}")
    num = float(m["num"]) if m["num"] else 1.0
    den = float(m["den"]) if m["den"] else 1.0
    return num * math.pi / den


def parse_range(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (inclusive of stop) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        return (parse_number(parts[0]),)
    if len(parts) != 3:
        raise ValueError(f"range must look like start:stop:step, got {text!r}")
    start, stop, step = (parse_number(x) for x in parts)
    if step <= 0:
        raise ValueError(f"range step must be positive, got {step!r}")
    if stop < start:
        raise ValueError(f"range stop {stop!r} is below start {start!r}")
    n = math.floor((stop - start) / step + 1e-9)
    vals = [start + k * step for k in range(n + 1)]
    if abs(vals[-1] - stop) <= 1e-9 * max(1.0, abs(stop)):
        vals[-1] = stop
    return tuple(vals)


# ---------------------------------------------------------------------------
# points and sweeps


@dataclass(frozen=True)
class PointResult:
    kind: ChannelKind
    p: float
    mu: float
    r: float
    concurrence_numeric: float
    concurrence_closed_form: float
    lambda_dev: float
    trace_residual: float
    hermiticity_residual: float

    def csv_row(self) -> list[str]:
        return [
            self.kind.code, fmt(self.p), fmt(self.mu), fmt(self.r),
            fmt(self.concurrence_numeric), fmt(self.concurrence_closed_form),
            fmt(self.trace_residual), fmt(self.hermiticity_residual),
        ]


def run_point(spec: ChannelSpec, r: float) -> PointResult:
    """Unruh state -> memory channel -> concurrence, with diagnostics.

    The closed-form columns are NaN where the published expression is
    undefined or clearly negative at this point.
    """
    rho = apply_channel(unruh_density_matrix(r), spec)
    res = concurrence(rho)
    try:
        closed = concurrence_closed_form(spec.kind, spec.p, spec.mu, r)
    except ConcurrenceError:
        closed = math.nan
    lam = np.sort(np.array(closed_form_lambdas(spec.kind, spec.p, spec.mu, r)))[::-1]
    lambda_dev = float(np.max(np.abs(lam - np.array(res.lambdas))))
    return PointResult(
        kind=spec.kind, p=spec.p, mu=spec.mu, r=float(r),
        concurrence_numeric=res.concurrence,
        concurrence_closed_form=closed,
        lambda_dev=lambda_dev,
        trace_residual=rho.trace_residual,
        hermiticity_residual=rho.hermiticity_residual,
    )


def _run_coords(coords) -> PointResult:
    kind, p, mu, r = coords
    try:
        return run_point(ChannelSpec(kind, p, mu), r)
    except Exception as exc:  # noqa: BLE001 - re-raised with coordinates
        raise SweepError(kind, p, mu, r, exc) from exc


def run_sweep(grid: SweepGrid, workers: int = 1) -> list[PointResult]:
    """Evaluate every grid point; rows come back in grid order regardless of ``workers``."""
    coords = list(grid.points())
    if workers <= 1:
        return [_run_coords(c) for c in coords]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_coords, coords))


def write_csv(results: Iterable[PointResult], out_path) -> Path:
    out_path = Path(out_path)
    with out_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for res in results:
            w.writerow(res.csv_row())
    return out_path


# ---------------------------------------------------------------------------
# figures

_FIG_MEMORY_SWEEP = {
    1: ChannelKind.AMPLITUDE_DAMPING,
    2: ChannelKind.DEPOLARIZING,
    3: ChannelKind.BIT_PHASE_FLIP,
    4: ChannelKind.PHASE_FLIP,
}


def figure_grid(n: int, p_step: int = 100, r_step: int = 400) -> SweepGrid:
    """Parameterisation of published figure ``n`` (1..7).

    ``p_step`` is the number of intervals across [0, 1] for p or mu,
    ``r_step`` the number of intervals of width pi/r_step used for the r axis.
    """
    unit = linspace_steps(p_step, 1.0)
    if n in _FIG_MEMORY_SWEEP:
        return SweepGrid((_FIG_MEMORY_SWEEP[n],), (0.5,), unit, (0.0, math.pi / 6, math.pi / 4))
    if n == 5:
        r_axis = linspace_steps(r_step // 4, math.pi / 4)
        return SweepGrid(ALL_KINDS, (0.5,), (0.5,), r_axis)
    if n == 6:
        return SweepGrid(ALL_KINDS, unit, (0.5,), (math.pi / 6,))
    if n == 7:
        return SweepGrid(ALL_KINDS, unit, (0.0,), (math.pi / 10,))
    raise ValueError(f"figure number must be in 1..7, got {n!r}")


def emit_figure(n: int, out_path, workers: int = 1, **grid_kw) -> Path:
    return write_csv(run_sweep(figure_grid(n, **grid_kw), workers=workers), out_path)


# ---------------------------------------------------------------------------
# errata


@dataclass(frozen=True)
class EquationSummary:
    equation: str
    channel: ChannelKind
    passed: bool
    max_dev: float
    all_hermitian: bool | None
    undefined_points: int


def equation_labels(kind: ChannelKind) -> dict[str, str]:
    labels = {
        "state": f"printed_state_{kind.code}",
        "lambdas": f"printed_lambdas_{kind.code}",
    }
    if UNPAIRED_ENTRIES[kind]:
        labels["state_paired"] = f"printed_state_{kind.code}_paired"
    return labels


def errata_rows(grid: SweepGrid, tol: float):
    """Yield ``(row, summary_key)`` pairs for every point and audited equation."""
    for kind, p, mu, r in grid.points():
        labels = equation_labels(kind)
        rep = crosscheck_point(kind, p, mu, r, tol=tol)
        coords = [kind.code, fmt(p), fmt(mu), fmt(r)]
        yield [labels["state"], *coords, str(rep.matrix_hermitian).lower(), fmt(rep.matrix_max_dev)]
        if "state_paired" in labels:
            paired = crosscheck_point(kind, p, mu, r, tol=tol, zero_unpaired=True)
            yield [labels["state_paired"], *coords, str(paired.matrix_hermitian).lower(),
                   fmt(paired.matrix_max_dev)]
        lam_dev = math.nan if rep.lambda_max_dev is None else rep.lambda_max_dev
        yield [labels["lambdas"], *coords, "", fmt(lam_dev)]


def _summarise(rows, tol: float) -> list[EquationSummary]:
    acc: dict[str, dict] = {}
    for eq, code, *_, herm, dev in rows:
        s = acc.setdefault(eq, {"kind": ChannelKind.parse(code), "max": 0.0, "herm": None, "nan": 0})
        d = float(dev)
        if math.isnan(d):
            s["nan"] += 1
        else:
            s["max"] = max(s["max"], d)
        if herm:
            s["herm"] = (herm == "true") if s["herm"] is None else (s["herm"] and herm == "true")
    out = []
    for eq, s in acc.items():
        passed = s["max"] <= tol and s["nan"] == 0 and s["herm"] is not False
        out.append(EquationSummary(eq, s["kind"], passed, s["max"], s["herm"], s["nan"]))
    return out


def errata_report(grid: SweepGrid, tol: float, out_path) -> list[EquationSummary]:
    """Write the per-point audit CSV followed by ``#``-prefixed summary lines.

    Returns the per-equation summaries.
    """
    rows = list(errata_rows(grid, tol))
    summary = _summarise(rows, tol)
    out_path = Path(out_path)
    with out_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ERRATA_HEADER)
        w.writerows(rows)
        fh.write(f"# summary tol={fmt(tol)}\n")
        fh.write("# equation,channel,status,max_dev,all_hermitian,undefined_points\n")
        for s in summary:
            herm = "" if s.all_hermitian is None else str(s.all_hermitian).lower()
            status = "pass" if s.passed else "fail"
            fh.write(f"# {s.equation},{s.channel.code},{status},{fmt(s.max_dev)},{herm},{s.undefined_points}\n")
    return summary
