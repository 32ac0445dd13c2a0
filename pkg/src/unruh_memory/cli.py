"""Command line entry point.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 I/O failure.
Options may also come from a ``key=value`` config file (``--config``); flags
given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from pathlib import Path

from .channels import ChannelError, ChannelKind, ChannelSpec
from .entanglement import ConcurrenceError
from .plotting import PlotInputError, emit_plot_script
from .sweep import (
    ALL_KINDS,
    CSV_HEADER,
    SweepError,
    SweepGrid,
    emit_figure,
    errata_report,
    linspace_steps,
    parse_number,
    parse_range,
    run_point,
    run_sweep,
    write_csv,
)

log = logging.getLogger("unruh_memory")

EXIT_ARGS, EXIT_NUMERIC, EXIT_IO = 2, 3, 4


class UsageError(ValueError):
    pass


def read_config(path) -> dict[str, str]:
    """Parse ``key=value`` lines; ``#`` starts a comment. Keys use dashes or underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def parse_kinds(text: str) -> tuple[ChannelKind, ...]:
    if text.strip().lower() == "all":
        return ALL_KINDS
    return tuple(ChannelKind.parse(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unruh-memory",
        description="Concurrence of an Alice-Rob Dirac qubit pair under correlated noise channels.",
    )
    parser.add_argument("--config", help="key=value file supplying defaults for the subcommand")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("point", help="evaluate a single (channel, p, mu, r) point")
    pt.add_argument("--channel", help="ad, dep, bpf or pf")
    pt.add_argument("--p", help="decoherence strength in [0, 1]")
    pt.add_argument("--mu", help="memory degree in [0, 1]")
    pt.add_argument("--r", help="acceleration parameter in [0, pi/4]; accepts e.g. pi/6")

    sw = sub.add_parser("sweep", help="Cartesian sweep written as CSV")
    sw.add_argument("--channel", default="all", help="comma list of ad,dep,bpf,pf or 'all'")
    sw.add_argument("--p-range", default="0:1:0.01", help="start:stop:step or single value")
    sw.add_argument("--mu-range", default="0")
    sw.add_argument("--r-range", default="0")
    sw.add_argument("--out")
    sw.add_argument("--workers", type=int, default=1)

    fg = sub.add_parser("figure", help="CSV reproducing one published figure (1..7)")
    fg.add_argument("--n", type=int)
    fg.add_argument("--out")
    fg.add_argument("--p-steps", type=int, default=100, help="intervals across [0,1] for p/mu axes")
    fg.add_argument("--r-steps", type=int, default=400, help="r axis step is pi/R_STEPS")
    fg.add_argument("--workers", type=int, default=1)

    er = sub.add_parser("errata", help="audit published closed forms over a grid")
    er.add_argument("--tol", default="1e-9")
    er.add_argument("--out")
    er.add_argument("--channel", default="all")
    er.add_argument("--p-range", default="0:1:0.1")
    er.add_argument("--mu-range", default="0:1:0.1")
    er.add_argument("--r-range", default="0:pi/4:pi/32")

    pl = sub.add_parser("plot", help="write a matplotlib script for a figure CSV")
    pl.add_argument("--csv")
    pl.add_argument("--out")
    return parser


_REQUIRED = {
    "point": ("channel", "p", "mu", "r"),
    "sweep": ("out",),
    "figure": ("n", "out"),
    "errata": ("out",),
    "plot": ("csv", "out"),
}


def _subparser(parser, name):
    for action in parser._subparsers._group_actions:
        if name in action.choices:
            return action.choices[name]
    raise KeyError(name)


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre, _ = parser.parse_known_args(argv)
    if pre.config:
        try:
            config = read_config(pre.config)
        except OSError as exc:
            parser.exit(EXIT_IO, f"cannot read config: {exc}\n")
        except UsageError as exc:
            parser.error(str(exc))
        sp = _subparser(parser, pre.command)
        known = {a.dest for a in sp._actions}
        unknown = sorted(set(config) - known)
        if unknown:
            parser.error(f"unknown config key(s) for '{pre.command}': {', '.join(unknown)}")
        for action in sp._actions:
            if action.dest in config and action.type is not None:
                config[action.dest] = action.type(config[action.dest])
        sp.set_defaults(**config)
    args = parser.parse_args(argv)
    missing = [k for k in _REQUIRED[args.command] if getattr(args, k) in (None, "")]
    if missing:
        parser.error(f"{args.command}: missing required option(s) " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return args


def _cmd_point(args) -> int:
    spec = ChannelSpec(ChannelKind.parse(args.channel), parse_number(args.p), parse_number(args.mu))
    res = run_point(spec, parse_number(args.r))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerow(res.csv_row())
    return 0


def _grid(args) -> SweepGrid:
    return SweepGrid(parse_kinds(args.channel), parse_range(args.p_range),
                     parse_range(args.mu_range), parse_range(args.r_range))


def _cmd_sweep(args) -> int:
    grid = _grid(args)
    write_csv(run_sweep(grid, workers=args.workers), args.out)
    log.info("wrote %d rows to %s", len(grid), args.out)
    return 0


def _cmd_figure(args) -> int:
    emit_figure(args.n, args.out, workers=args.workers, p_step=args.p_steps, r_step=args.r_steps)
    log.info("figure %d written to %s", args.n, args.out)
    return 0


def _cmd_errata(args) -> int:
    tol = float(args.tol)
    if not (tol >= 0 and math.isfinite(tol)):
        raise UsageError(f"tolerance must be a non-negative number, got {args.tol!r}")
    summary = errata_report(_grid(args), tol, args.out)
    for s in summary:
        status = "pass" if s.passed else "FAIL"
        print(f"{s.equation:<28} {status:<4} max_dev={s.max_dev:.3e} undefined={s.undefined_points}")
    return 0


def _cmd_plot(args) -> int:
    emit_plot_script(args.csv, args.out)
    return 0


COMMANDS = {
    "point": _cmd_point,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "errata": _cmd_errata,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (SweepError, ConcurrenceError, ChannelError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, PlotInputError) as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
