"""Command-line surface: fit CSV data, run campaigns, multi-coefficient grids.

Commands
--------
fit       one CSV sample -> full comparison report
simulate  seeded bivariate-normal campaign -> per-quantity means
table2    one sample (CSV or generated) under several coefficients

Reports go to stdout as an aligned table (4 decimals) or as JSON (full
precision, key-sorted, byte-stable across reruns and thread counts).
Diagnostics such as bracket warnings go to stderr only.

Exit codes: 0 success, 2 usage, 3 CSV parse error, 4 invalid data,
5 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .baseline import compare
from .correlation import CC_KINDS, check_cc
from .estimator import DEFAULT_GRID_POINTS, DEFAULT_SEARCH_BRACKET, fit_ms
from .exceptions import (
    BracketingError,
    CampaignError,
    CesError,
    CsvFormatError,
    DegenerateInputError,
    InvalidInputError,
    NumericError,
)
from .simulate import (
    TABLE2_CCS,
    TABLE2_DEFAULT_N,
    TABLE2_DEFAULT_PARAMS,
    BvnParams,
    SimConfig,
    derive_key,
    draw_sample,
    run_campaign,
    stream,
    table2_run,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_NUMERIC = 5


def read_xy_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column CSV with a header naming the columns x and y."""
    try:
        fh = open(path, newline="")
    except OSError as err:
        raise CsvFormatError(f"cannot open {path}: {err.strerror}") from err
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError("empty file", line=1) from None
        names = [c.strip().lower() for c in header]
        if sorted(names) != ["x", "y"]:
            raise CsvFormatError(
                f"header must name exactly the columns x,y; got {','.join(header)}",
                line=1,
            )
        ix, iy = names.index("x"), names.index("y")
        xs: list[float] = []
        ys: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise CsvFormatError(f"line {lineno}: expected 2 fields, got {len(row)}", line=lineno)
            try:
                xs.append(float(row[ix]))
                ys.append(float(row[iy]))
            except ValueError:
                raise CsvFormatError(f"line {lineno}: invalid number", line=lineno) from None
    return np.array(xs), np.array(ys)


def _fmt(value) -> str:
    return "" if value is None else f"{value:.4f}"


def render_table(rows: list[tuple[str, ...]], header: tuple[str, ...]) -> str:
    """Align columns of pre-formatted cells; numbers carry 4 decimals."""
    table = [header, *rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_fit(report, fmt: str) -> str:
    payload = report.as_dict()
    if fmt == "json":
        return render_json(payload)
    rows = [(name, _fmt(value)) for name, value in payload.items()]
    return render_table(rows, ("quantity", "value"))


def emit_summary(summary, fmt: str) -> str:
    cfg = summary.config
    payload = {
        "config": {
            "rho": cfg.params.rho,
            "sigma_x": cfg.params.sigma_x,
            "sigma_y": cfg.params.sigma_y,
            "beta": cfg.params.beta,
            "sigma_eps": cfg.params.sigma_eps,
            "n": cfg.n,
            "nsim": cfg.nsim,
            "seed": cfg.seed,
            "cc": cfg.cc,
        },
        "means": summary.means,
        "stderrs": summary.stderrs,
    }
    if fmt == "json":
        return render_json(payload)
    rows = [
        (name, _fmt(summary.means[name]), _fmt(summary.stderrs[name]))
        for name in summary.means
    ]
    return render_table(rows, ("quantity", "mean", "stderr"))


def emit_table2(result, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "ls": {"beta_ls": result.beta_ls, "sigma_eps_ls": result.sigma_eps_ls},
            "rows": [
                {
                    "cc": r.cc,
                    "beta_ces": r.beta_ces,
                    "sigma_eps_ces": r.sigma_eps_ces,
                    "sigma_eps_ms": r.sigma_eps_ms,
                    "sigma_eps_ls2": r.sigma_eps_ls2,
                    "error": r.error,
                }
                for r in result.rows
            ],
        }
        return render_json(payload)
    rows = [("ls", _fmt(result.beta_ls), _fmt(result.sigma_eps_ls), "")]
    for r in result.rows:
        if r.error is not None:
            rows.append((r.cc, "error: " + r.error, "", ""))
            continue
        rows.append(("ls2", "", "", _fmt(r.sigma_eps_ls2)))
        rows.append((r.cc, _fmt(r.beta_ces), _fmt(r.sigma_eps_ces), _fmt(r.sigma_eps_ms)))
    return render_table(rows, ("row", "beta", "sigma_eps", "sigma_eps_scaled"))


def _bracket(text: str) -> tuple[float, float]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"bracket needs LO < HI, got {text!r}")
    return lo, hi


def _cc_list(text: str) -> tuple[str, ...]:
    try:
        return tuple(check_cc(c) for c in text.split(","))
    except InvalidInputError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesreg",
        description="Minimum-slope regression, least-squares comparison and simulation campaigns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--cc", default="pearson", choices=CC_KINDS, help="correlation coefficient")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--bracket", type=_bracket, default=DEFAULT_SEARCH_BRACKET,
                       metavar="LO:HI", help="slope search interval")
        p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)

    p_fit = sub.add_parser("fit", help="fit one CSV sample and report the comparison")
    p_fit.add_argument("csv", help="CSV file with header x,y")
    add_common(p_fit)

    p_sim = sub.add_parser("simulate", help="run a seeded bivariate-normal campaign")
    p_sim.add_argument("--rho", type=float, required=True)
    p_sim.add_argument("--sigma-x", type=float, required=True)
    p_sim.add_argument("--sigma-y", type=float, required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--nsim", type=int, required=True)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--threads", type=int, default=1)
    add_common(p_sim)

    p_t2 = sub.add_parser("table2", help="one sample under several coefficients")
    p_t2.add_argument("csv", nargs="?", help="CSV file with header x,y")
    p_t2.add_argument("--seed", type=int, help="generate the sample instead of reading a CSV")
    p_t2.add_argument("--rho", type=float, default=TABLE2_DEFAULT_PARAMS.rho)
    p_t2.add_argument("--sigma-x", type=float, default=TABLE2_DEFAULT_PARAMS.sigma_x)
    p_t2.add_argument("--sigma-y", type=float, default=TABLE2_DEFAULT_PARAMS.sigma_y)
    p_t2.add_argument("--n", type=int, default=TABLE2_DEFAULT_N)
    p_t2.add_argument("--cc", type=_cc_list, default=TABLE2_CCS,
                      metavar="CC[,CC...]", help="comma-separated coefficient list")
    p_t2.add_argument("--format", choices=("table", "json"), default="table")
    p_t2.add_argument("--bracket", type=_bracket, default=DEFAULT_SEARCH_BRACKET, metavar="LO:HI")
    p_t2.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    return parser


def cmd_fit(args) -> int:
    x, y = read_xy_csv(args.csv)
    report = compare(x, y, cc=args.cc, bracket=args.bracket, grid_points=args.grid_points)
    probe = fit_ms(x, y, cc=args.cc, bracket=args.bracket, grid_points=args.grid_points)
    if probe.near_edge:
        print(
            f"warning: fitted slope {probe.slope:.4f} lies within 1% of the "
            f"search bracket {probe.bracket}; consider --bracket",
            file=sys.stderr,
        )
    sys.stdout.write(emit_fit(report, args.format))
    return EXIT_OK


def cmd_simulate(args, parser) -> int:
    try:
        params = BvnParams(rho=args.rho, sigma_x=args.sigma_x, sigma_y=args.sigma_y)
        config = SimConfig(params=params, n=args.n, nsim=args.nsim, seed=args.seed, cc=args.cc)
    except InvalidInputError as err:
        parser.error(str(err))  # exits with the usage code
    if args.threads < 1:
        parser.error(f"--threads must be >= 1, got {args.threads}")
    summary = run_campaign(config, threads=args.threads)
    sys.stdout.write(emit_summary(summary, args.format))
    return EXIT_OK


def cmd_table2(args, parser) -> int:
    if (args.csv is None) == (args.seed is None):
        parser.error("table2 needs a CSV path or --seed (not both)")
    if args.csv is not None:
        x, y = read_xy_csv(args.csv)
    else:
        try:
            params = BvnParams(rho=args.rho, sigma_x=args.sigma_x, sigma_y=args.sigma_y)
        except InvalidInputError as err:
            parser.error(str(err))
        x, y = draw_sample(params, args.n, stream(derive_key(args.seed, 0)))
    result = table2_run(x, y, cc_list=args.cc, bracket=args.bracket, grid_points=args.grid_points)
    sys.stdout.write(emit_table2(result, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fit":
            return cmd_fit(args)
        if args.command == "simulate":
            return cmd_simulate(args, parser)
        return cmd_table2(args, parser)
    except CsvFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInputError, DegenerateInputError) as err:
        stage = f" [{err.stage}]" if err.stage else ""
        print(f"error{stage}: {err}", file=sys.stderr)
        return EXIT_INVALID
    except (BracketingError, NumericError, CampaignError, CesError) as err:
        stage = f" [{err.stage}]" if err.stage else ""
        print(f"error{stage}: {err}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
