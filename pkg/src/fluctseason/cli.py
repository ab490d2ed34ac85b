"""Command-line front end.

Exit codes: 0 success, 1 data or computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .decompose import MeanConfig, decompose
from .detect import AnalysisConfig, ThresholdSpec, analyze
from .errors import SeasonalityError
from .io import SERIES_HEADER, CsvSpec, read_csv, read_report, read_series_csv, write_report, write_series_csv
from .plotting import PLOT_KINDS, PlotSpec, plot_fluctuation_with_threshold, plot_interval_stem, plot_report, plot_series_with_mean
from .series import SamplingPeriod, make_series, rescale_mean, rescale_sum

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2

_POLARITY = {"pos": "positive", "neg": "negative", "both": "both"}
_THRESHOLD_MODE = {"abs": "absolute", "sigma": "sigma_multiple"}


class UsageError(Exception):
    pass


def _period(text):
    try:
        return SamplingPeriod.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _column(text):
    return int(text) if text.isdigit() else text


def _add_input_args(p):
    g = p.add_argument_group("input")
    g.add_argument("--input", required=True, help="CSV file with one value per row")
    g.add_argument("--period", type=_period, default=SamplingPeriod(1, "month"),
                   help='sampling period as "<count> <unit>" (default: "1 month")')
    g.add_argument("--value-column", type=_column, default=None,
                   help="column name or 0-based index (default: 'value' if present, else 0)")
    g.add_argument("--index-column", type=_column, default=None,
                   help="optional time/index column, checked for uniform spacing")
    g.add_argument("--delimiter", default=",")
    g.add_argument("--no-header", action="store_true")
    g.add_argument("--decimal-comma", action="store_true", help="values use ',' as decimal separator")
    g.add_argument("--missing", choices=("error", "interpolate_linear", "drop_leading_trailing"), default="error")


def _add_mean_args(p):
    g = p.add_argument_group("mean estimation")
    g.add_argument("--ma-kind", choices=("centered", "trailing"), default="centered")
    g.add_argument("--ma-length", type=_positive_int, default=20)
    g.add_argument("--edge", choices=("undefined", "shrink"), default="undefined")


def _add_detect_args(p):
    g = p.add_argument_group("detection")
    g.add_argument("--threshold-mode", choices=tuple(_THRESHOLD_MODE), default="sigma")
    g.add_argument("--threshold-value", type=float, default=1.0,
                   help="absolute threshold, or multiple of the fluctuation's standard deviation")
    g.add_argument("--polarity", choices=tuple(_POLARITY), default="pos")
    g.add_argument("--normalize", action="store_true", help="use fluctuation / mean")
    g.add_argument("--epsilon", type=float, default=None, help="zero guard for --normalize")
    g.add_argument("--rho", type=float, default=0.25)
    g.add_argument("--q", type=float, default=0.8)
    g.add_argument("--min-crossings", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluctseason",
        description="Mean/fluctuation decomposition and threshold-crossing seasonality detection.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split a series into mean and fluctuation")
    _add_input_args(p)
    _add_mean_args(p)
    p.add_argument("--out-mean", required=True)
    p.add_argument("--out-fluct", required=True)

    p = sub.add_parser("rescale", help="aggregate consecutive samples onto a coarser grid")
    _add_input_args(p)
    p.add_argument("--window", type=_positive_int, required=True)
    p.add_argument("--agg", choices=("sum", "mean"), default="sum")
    p.add_argument("--out", required=True)

    p = sub.add_parser("analyze", help="detect and classify seasonalities or cycles")
    _add_input_args(p)
    _add_mean_args(p)
    _add_detect_args(p)
    p.add_argument("--report", default=None, help="write the report here")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render the three SVG panels into DIR")

    p = sub.add_parser("plot", help="render one SVG panel from a series or a JSON report")
    _add_input_args(p)
    _add_mean_args(p)
    _add_detect_args(p)
    p.add_argument("--kind", choices=PLOT_KINDS, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--width", type=_positive_int, default=1200)
    p.add_argument("--height", type=_positive_int, default=500)
    return parser


def _header(path, delimiter):
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh, delimiter=delimiter):
            if row:
                return [c.strip() for c in row]
    return []


def load_series(args):
    """Read ``--input`` honouring the CSV flags.

    Files in the ``index,value,defined`` layout written by this tool are read
    back with their start index; they must be fully defined.
    """
    header = [] if args.no_header else _header(args.input, args.delimiter)
    if tuple(header) == SERIES_HEADER and args.value_column is None and args.delimiter == ",":
        ms = read_series_csv(args.input, args.period)
        if not ms.defined.all():
            raise SeasonalityError(f"{args.input} contains undefined samples")
        return make_series(ms.values, args.period, ms.start_index, ms.label)
    column = args.value_column
    if column is None:
        column = "value" if "value" in header else 0
    spec = CsvSpec(
        delimiter=args.delimiter,
        has_header=not args.no_header,
        value_column=column,
        index_column=args.index_column,
        decimal_separator="comma" if args.decimal_comma else "point",
        missing_policy=args.missing,
    )
    return read_csv(args.input, spec, args.period)


def _mean_config(args):
    return MeanConfig(args.ma_kind, args.ma_length, args.edge)


def _analysis_config(args):
    return AnalysisConfig(
        mean=_mean_config(args),
        threshold=ThresholdSpec(_THRESHOLD_MODE[args.threshold_mode], args.threshold_value),
        polarity=_POLARITY[args.polarity],
        rho=args.rho,
        q=args.q,
        min_crossings=args.min_crossings,
        normalize=args.normalize,
        epsilon=args.epsilon,
    )


def verdict_line(report) -> str:
    cls = report.classification
    if cls.estimated_period_samples is None:
        return cls.verdict
    return f"{cls.verdict} (period ≈ {cls.estimated_period_samples:g} samples)"


def cmd_decompose(args) -> int:
    cfg = _mean_config(args)
    d = decompose(load_series(args), cfg)
    write_series_csv(d.mean, args.out_mean)
    write_series_csv(d.fluctuation, args.out_fluct)
    return EXIT_OK


def cmd_rescale(args) -> int:
    x = load_series(args)
    fn = rescale_sum if args.agg == "sum" else rescale_mean
    y = fn(x, args.window)
    write_series_csv(y, args.out)
    Path(str(args.out) + ".meta").write_text(f"period: {y.period}\n", encoding="utf-8")
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        cfg = _analysis_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = analyze(load_series(args), cfg)
    if args.report:
        write_report(report, args.report, args.format)
    if args.figures:
        plot_report(report, args.figures, stem=Path(args.input).stem)
    print(verdict_line(report))
    return EXIT_OK


def _looks_like_report(path):
    if Path(path).suffix.lower() == ".json":
        return True
    with open(path, encoding="utf-8") as fh:
        return fh.read(64).lstrip().startswith("{")


def cmd_plot(args) -> int:
    spec = PlotSpec(args.kind, args.out, args.width, args.height)
    if _looks_like_report(args.input):
        try:
            data = read_report(args.input)
        except json.JSONDecodeError as exc:
            raise SeasonalityError(f"{args.input}: invalid JSON report ({exc})") from None
        if args.kind != "interval_stem":
            raise SeasonalityError(f"a report only carries intervals; plot kind {args.kind} needs a series input")
        plot_interval_stem(data["intervals"], spec, crossings=data["crossings"])
        return EXIT_OK

    x = load_series(args)
    if args.kind == "series_with_mean":
        plot_series_with_mean(x, decompose(x, _mean_config(args)).mean, spec)
        return EXIT_OK
    try:
        cfg = _analysis_config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = analyze(x, cfg)
    if args.kind == "fluctuation_with_threshold":
        plot_fluctuation_with_threshold(report.signal, report.threshold, spec, normalized=cfg.normalize)
    else:
        plot_interval_stem(report.intervals, spec, crossings=report.crossings.times)
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "rescale": cmd_rescale,
    "analyze": cmd_analyze,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fluctseason {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SeasonalityError as exc:
        print(f"fluctseason {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, csv.Error, ValueError) as exc:
        print(f"fluctseason {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
