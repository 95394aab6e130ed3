"""Command-line interface.

Exit status: 0 success, 1 replication check failure, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import __version__
from .exceptions import (
    DegenerateCorrelationWarning,
    DesignTestabilityError,
    FixtureCorruption,
    InputError,
    MalformedDocument,
    ZeroVariance,
)
from .metrics import METRIC_NAMES, class_level_metrics, project_metrics
from .model import load_design_model, resolve_hierarchy, validate_model
from .quality import assess, load_coefficients, rank_projects
from .replication import load_fixtures, replicate
from .stats import (
    correlation_t_test,
    ols_fit,
    pearson,
    rank_values,
    read_csv,
    spearman,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

COMMANDS = ("measure", "rank", "fit", "correlate", "ttest-r", "replicate-paper")
FORMATS = ("text", "csv", "json")


@dataclass
class RunConfig:
    command: str
    inputs: List[str] = field(default_factory=list)
    output_format: str = "text"
    aggregate: str = "mean"
    rank_desc: bool = False
    alpha: float = 0.05
    df_convention: str = "n_minus_2"
    coefficients: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise InputError(f"unknown format {self.output_format!r}")
        if not 0.0 < self.alpha < 1.0:
            raise InputError(f"--alpha must lie in (0, 1), got {self.alpha}")


def _f4(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.4f}"


def _rank_str(r) -> str:
    if r is None:
        return ""
    return str(int(r)) if float(r).is_integer() else f"{r:.1f}"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- measure -----------------------------------------------------------------


def cmd_measure(args, cfg: RunConfig, out) -> int:
    coeffs = {k: load_coefficients(v) for k, v in cfg.coefficients.items()}
    models = []
    for path in cfg.inputs:
        m = load_design_model(path)
        report = validate_model(m)
        if not report.ok:
            msgs = "; ".join(v.message for v in report.violations)
            raise InputError(f"{path}: invalid model: {msgs}")
        if not m.classes:
            raise InputError(f"{path}: model has no classes")
        models.append(m)

    if args.class_metrics:
        rows = [["project", "class", *METRIC_NAMES]]
        for m in models:
            h = resolve_hierarchy(m)
            for c, mv in zip(m.classes, class_level_metrics(m, h)):
                rows.append([m.project_name, c.name, *map(_f4, mv.as_tuple())])
            pv = project_metrics(m, h, aggregate=cfg.aggregate)
            rows.append([m.project_name, "*", *map(_f4, pv.as_tuple())])
        out.write(_csv(rows))
        return EXIT_OK

    reports = [
        assess(m.project_name, project_metrics(m, aggregate=cfg.aggregate), **coeffs) for m in models
    ]
    reports = rank_projects(reports, descending=cfg.rank_desc)
    header = ["project", *METRIC_NAMES, "modifiability", "flexibility", "testability", "rank"]
    rows = [
        [
            r.project,
            *r.metrics.as_tuple(),
            r.factors.modifiability,
            r.factors.flexibility,
            r.testability,
            r.rank,
        ]
        for r in reports
    ]
    if cfg.output_format == "csv":
        out.write(_csv([header] + [[row[0], *map(_f4, row[1:-1]), _rank_str(row[-1])] for row in rows]))
    elif cfg.output_format == "json":
        out.write(
            _json(
                {
                    "aggregate": cfg.aggregate,
                    "rank_direction": "descending" if cfg.rank_desc else "ascending",
                    "projects": [dict(zip(header, row)) for row in rows],
                }
            )
        )
    else:
        out.write(
            f"{'project':<20} {'ENM':>8} {'INM':>8} {'CPM':>8} {'COM':>8} "
            f"{'Modif.':>10} {'Flex.':>10} {'Testab.':>12} {'rank':>5}\n"
        )
        for row in rows:
            name, *nums, rank = row
            out.write(
                f"{name:<20} "
                + " ".join(f"{_f4(v):>8}" for v in nums[:4])
                + " "
                + " ".join(f"{_f4(v):>10}" for v in nums[4:6])
                + f" {_f4(nums[6]):>12} {_rank_str(rank):>5}\n"
            )
        out.write(
            "\nmetrics: ENM=hidden/all attributes, INM=inherited/all methods, "
            "CPM=distinct coupled classes, COM=parameter-type overlap; "
            f"project aggregate: {cfg.aggregate}\n"
            "testability score in model units; "
            f"rank 1 = {'highest' if cfg.rank_desc else 'lowest'} score\n"
        )
    return EXIT_OK


# -- rank --------------------------------------------------------------------


def cmd_rank(args, cfg: RunConfig, out) -> int:
    path = cfg.inputs[0]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or args.id_column not in reader.fieldnames or args.value_column not in reader.fieldnames:
            raise InputError(
                f"{path}: need columns '{args.id_column}' and '{args.value_column}'"
            )
        ids, values = [], []
        for lineno, row in enumerate(reader, start=2):
            try:
                v = float(row[args.value_column])
            except (TypeError, ValueError):
                raise MalformedDocument("non-numeric value", path=path, line=lineno, column=1) from None
            if not math.isfinite(v):
                raise InputError(f"{path}:{lineno}: non-finite value")
            ids.append(row[args.id_column])
            values.append(v)
    if not values:
        raise InputError(f"{path}: no rows to rank")
    ranks = rank_values([-v for v in values] if cfg.rank_desc else values)
    rows = [[i, _f4(v), _rank_str(r)] for i, v, r in zip(ids, values, ranks)]
    if cfg.output_format == "json":
        out.write(_json([{"id": i, "value": v, "rank": r} for i, v, r in zip(ids, values, ranks)]))
    elif cfg.output_format == "csv":
        out.write(_csv([[args.id_column, args.value_column, "rank"]] + rows))
    else:
        for i, v, r in rows:
            out.write(f"{i:<20} {v:>12} {r:>6}\n")
    return EXIT_OK


# -- fit ---------------------------------------------------------------------


def cmd_fit(args, cfg: RunConfig, out) -> int:
    d = read_csv(cfg.inputs[0])
    for name in [args.response, *args.predictors]:
        d.column(name)
    fit, summ = ols_fit(d, args.response, args.predictors)
    if cfg.output_format == "json":
        out.write(
            _json(
                {
                    "response": fit.response,
                    "coefficients": [
                        {"name": r.name, "B": r.b, "std_error": r.std_error, "beta": r.beta, "t": r.t, "sig": r.sig}
                        for r in fit.coefficients
                    ],
                    "summary": {
                        "R": summ.r,
                        "R_square": summ.r_square,
                        "adjusted_R_square": summ.adjusted_r_square,
                        "std_error_of_estimate": summ.std_error_of_estimate,
                        "n": summ.n,
                        "k": summ.k,
                    },
                }
            )
        )
    elif cfg.output_format == "csv":
        rows = [["term", "B", "std_error", "beta", "t", "sig"]]
        rows += [[r.name, _f4(r.b), _f4(r.std_error), _f4(r.beta), _f4(r.t), _f4(r.sig)] for r in fit.coefficients]
        rows += [[], ["R", "R_square", "adjusted_R_square", "std_error_of_estimate"]]
        rows += [[_f4(summ.r), _f4(summ.r_square), _f4(summ.adjusted_r_square), _f4(summ.std_error_of_estimate)]]
        out.write(_csv(rows))
    else:
        out.write(f"Coefficients (dependent variable: {fit.response})\n")
        out.write(f"{'':<16} {'B':>12} {'Std. Error':>12} {'Beta':>10} {'t':>10} {'Sig.':>8}\n")
        for r in fit.coefficients:
            out.write(
                f"{r.name:<16} {_f4(r.b):>12} {_f4(r.std_error):>12} {_f4(r.beta):>10} "
                f"{_f4(r.t):>10} {_f4(r.sig):>8}\n"
            )
        out.write("\nModel Summary\n")
        out.write(f"{'R':>8} {'R Square':>10} {'Adjusted R Square':>18} {'Std. Error of the Estimate':>27}\n")
        out.write(
            f"{_f4(summ.r):>8} {_f4(summ.r_square):>10} {_f4(summ.adjusted_r_square):>18} "
            f"{_f4(summ.std_error_of_estimate):>27}\n"
        )
    return EXIT_OK


# -- correlate ---------------------------------------------------------------


def cmd_correlate(args, cfg: RunConfig, out) -> int:
    d = read_csv(cfg.inputs[0])
    cols = args.columns or list(d.column_names)
    data = {c: list(d.column(c)) for c in cols}
    if d.n < 2:
        raise InputError("correlation needs at least two rows")
    matrix = {}
    details = []
    for a in cols:
        for b in cols:
            try:
                if args.method == "pearson":
                    matrix[a, b] = pearson(data[a], data[b])
                else:
                    res = spearman(rank_values(data[a]), rank_values(data[b]))
                    matrix[a, b] = res.r_s
                    if cols.index(a) < cols.index(b):
                        details.append((a, b, res))
            except ZeroVariance:
                matrix[a, b] = None
    if cfg.output_format == "json":
        body = {
            "method": args.method,
            "columns": cols,
            "matrix": [[matrix[a, b] for b in cols] for a in cols],
        }
        if details:
            body["pairs"] = [
                {"x": a, "y": b, "r_s": r.r_s, "sum_d_squared": r.sum_d_squared, "n": r.n, "path": r.method}
                for a, b, r in details
            ]
        out.write(_json(body))
        return EXIT_OK
    cell = lambda v: "n/a" if v is None else _f4(v)  # noqa: E731
    if cfg.output_format == "csv":
        rows = [[""] + cols] + [[a] + [cell(matrix[a, b]) for b in cols] for a in cols]
        out.write(_csv(rows))
        return EXIT_OK
    width = max(10, *(len(c) + 2 for c in cols))
    out.write(f"{args.method} correlation (n = {d.n})\n")
    out.write(" " * width + "".join(f"{c:>{width}}" for c in cols) + "\n")
    for a in cols:
        out.write(f"{a:<{width}}" + "".join(f"{cell(matrix[a, b]):>{width}}" for b in cols) + "\n")
    for a, b, r in details:
        if r.method == "d-squared":
            out.write(f"{a} vs {b}: sum d^2 = {r.sum_d_squared:g}, n = {r.n}, r_s = {_f4(r.r_s)}\n")
        else:
            out.write(f"{a} vs {b}: ties present, r_s = Pearson of average ranks = {_f4(r.r_s)}\n")
    if any(v is None for v in matrix.values()):
        out.write("n/a: a column has zero variance\n")
    return EXIT_OK


# -- ttest-r -----------------------------------------------------------------


def cmd_ttest_r(args, cfg: RunConfig, out) -> int:
    hint = " (see 'design-testability ttest-r --help')"
    if not -1.0 <= args.r <= 1.0:
        raise InputError(f"--r must lie in [-1, 1], got {args.r}{hint}")
    if args.n < 3:
        raise InputError(f"--n must be at least 3, got {args.n}{hint}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateCorrelationWarning)
        res = correlation_t_test(args.r, args.n, cfg.alpha, cfg.df_convention)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    decision = "Reject" if res.reject_null else "Accept"
    if cfg.output_format == "json":
        out.write(
            _json(
                {
                    "r": res.r,
                    "n": res.n,
                    "t": None if math.isinf(res.t_statistic) else res.t_statistic,
                    "df": res.df,
                    "df_convention": res.df_convention,
                    "alpha": res.alpha,
                    "critical_value": res.critical_value,
                    "decision": decision,
                }
            )
        )
    elif cfg.output_format == "csv":
        out.write(
            _csv(
                [
                    ["r", "n", "t", "df", "df_convention", "alpha", "critical_value", "decision"],
                    [_f4(res.r), res.n, _f4(res.t_statistic), res.df, res.df_convention,
                     _f4(res.alpha), _f4(res.critical_value), decision],
                ]
            )
        )
    else:
        out.write(f"H0: {args.x_name} and {args.y_name} are not significantly correlated\n")
        out.write(f"r = {res.r:g}, N = {res.n}\n")
        out.write(f"t = r*sqrt(N-2)/sqrt(1-r^2) = {_f4(res.t_statistic)}\n")
        out.write(f"df = {res.df} ({res.df_convention}), two-tailed alpha = {res.alpha:g}\n")
        out.write(f"critical value = {_f4(res.critical_value)}\n")
        cmp = ">=" if res.reject_null else "<"
        out.write(f"|t| {cmp} critical value: {decision} H0\n")
    return EXIT_OK


# -- replicate-paper ---------------------------------------------------------


def cmd_replicate(args, cfg: RunConfig, out) -> int:
    fx = load_fixtures(args.fixtures)
    report = replicate(args.table or ["all"], fx)
    out.write(report.to_csv() if cfg.output_format == "csv" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="design-testability",
        description="Design-level testability metrics, models and statistics.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=FORMATS):
        sp.add_argument("--format", dest="output_format", choices=choices, default="text")

    m = sub.add_parser("measure", help="metrics, quality factors and testability per model file")
    m.add_argument("models", nargs="+", help="class-model JSON documents")
    m.add_argument("--aggregate", choices=("mean", "sum"), default="mean")
    m.add_argument("--rank-desc", action="store_true", help="rank 1 = highest testability")
    m.add_argument("--modifiability-coefficients", default="paper-modifiability", metavar="SRC")
    m.add_argument("--flexibility-coefficients", default="paper-flexibility", metavar="SRC")
    m.add_argument("--testability-coefficients", default="paper-testability", metavar="SRC")
    m.add_argument("--class-metrics", action="store_true", help="emit class-level metric rows as CSV")
    fmt(m)

    r = sub.add_parser("rank", help="rank projects in a CSV by a value column")
    r.add_argument("csv")
    r.add_argument("--id-column", default="project")
    r.add_argument("--value-column", default="testability")
    r.add_argument("--rank-desc", action="store_true")
    fmt(r)

    f = sub.add_parser("fit", help="OLS multiple regression on a CSV dataset")
    f.add_argument("dataset")
    f.add_argument("--response", required=True)
    f.add_argument("--predictors", nargs="+", required=True)
    fmt(f)

    c = sub.add_parser("correlate", help="pairwise correlation matrix")
    c.add_argument("dataset")
    c.add_argument("--method", choices=("pearson", "spearman"), default="pearson")
    c.add_argument("--columns", nargs="+")
    fmt(c)

    t = sub.add_parser("ttest-r", help="significance test of a correlation coefficient")
    t.add_argument("--r", type=float, required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--df-convention", choices=("n_minus_2", "n"), default="n_minus_2")
    t.add_argument("--x-name", default="X")
    t.add_argument("--y-name", default="Y")
    fmt(t)

    rp = sub.add_parser("replicate-paper", help="re-derive the published validation tables")
    rp.add_argument(
        "--table", action="append", choices=("1", "2", "3", "4", "5", "all"),
        help="table to check (repeatable; default all)",
    )
    rp.add_argument("--fixtures", default=None, help=argparse.SUPPRESS)
    fmt(rp, ("text", "csv"))
    return p


HANDLERS = {
    "measure": cmd_measure,
    "rank": cmd_rank,
    "fit": cmd_fit,
    "correlate": cmd_correlate,
    "ttest-r": cmd_ttest_r,
    "replicate-paper": cmd_replicate,
}


def _config(args) -> RunConfig:
    inputs = {
        "measure": lambda: list(args.models),
        "rank": lambda: [args.csv],
        "fit": lambda: [args.dataset],
        "correlate": lambda: [args.dataset],
    }.get(args.command, list)()
    cfg = RunConfig(
        command=args.command,
        inputs=inputs,
        output_format=args.output_format,
        aggregate=getattr(args, "aggregate", "mean"),
        rank_desc=getattr(args, "rank_desc", False),
        alpha=getattr(args, "alpha", 0.05),
        df_convention=getattr(args, "df_convention", "n_minus_2"),
    )
    if args.command == "measure":
        cfg.coefficients = {
            "mod": args.modifiability_coefficients,
            "flex": args.flexibility_coefficients,
            "test": args.testability_coefficients,
        }
    cfg.validate()
    return cfg


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return HANDLERS[args.command](args, cfg, out)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return EXIT_INPUT
    except FixtureCorruption as exc:
        print(f"error: fixture corrupted: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, DesignTestabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
