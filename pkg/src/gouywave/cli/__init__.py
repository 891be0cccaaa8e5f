"""``gouywave`` command-line interface.

Exit status: 0 success, 1 invalid input or scenario, 2 numerical check
failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from ..core import make_spec
from ..dynamics import find_width_extrema
from ..errors import GouyWaveError, InvalidParameter, IoFailure
from ..estimation import cfi_gouy_coincidence, fisher_report
from ..oracle import QuadratureConfig
from ..phase_space import evolved_covariance, wigner_gaussian
from . import scenario as scenario_module
from .checks import DEFAULT_TIMES, default_battery, oracle_check
from .figures import FIGURE_IDS, WIGNER_EXTENT, WIGNER_GRID, build_figure, emit_figure
from .scenario import Scenario, SweepAxis, parse_scenario, serialize_scenario
from .sweep import Dataset, render, run_sweep, write_text

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

__all__ = [
    "Dataset",
    "Scenario",
    "SweepAxis",
    "build_figure",
    "emit_figure",
    "main",
    "oracle_check",
    "parse_scenario",
    "render",
    "run_sweep",
    "serialize_scenario",
]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for numerical failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc


def _cmd_sweep(args) -> int:
    sc = parse_scenario(_read(args.scenario))
    if args.unwrapped:
        sc = sc.with_changes(unwrap=True)
    fmt = args.format or sc.format
    write_text(render(run_sweep(sc), fmt), args.out)
    return EXIT_OK


def _cmd_figure(args) -> int:
    ids = FIGURE_IDS if args.id == "all" else (args.id,)
    for fig_id in ids:
        paths = emit_figure(
            fig_id, args.out or ".", args.format or "csv",
            unwrapped=args.unwrapped, rescale_fig7c=args.rescale_fig7c,
        )
        for p in paths:
            print(p)
    return EXIT_OK


def _cmd_fisher(args) -> int:
    spec = make_spec(args.omega, args.omega, args.gamma)
    cols = ["t", "gamma", "omega", "cfi_closed", "cfi_numeric", "qfi_closed", "qfi_general", "crlb_single_shot", "flag"]
    data = Dataset(cols, echo={"omega": args.omega, "gamma": args.gamma, "times": list(args.times)})
    status = EXIT_OK
    for t in args.times:
        r = fisher_report(spec, t)
        if "information_inequality" in r.diagnostics:
            status = EXIT_NUMERIC
        bound = r.crlb_single_shot if math.isfinite(r.crlb_single_shot) else None
        data.rows.append([r.t, r.gamma, r.omega, r.cfi_closed, r.cfi_numeric, r.qfi_closed, r.qfi_general,
                          bound, ";".join(r.diagnostics)])
    if args.coincidence:
        c = cfi_gouy_coincidence(spec)
        data.echo["coincidence"] = {
            "t_cfi_max": None if math.isnan(c.t_cfi_max) else c.t_cfi_max,
            "t_mu_signchange": None if math.isnan(c.t_mu_signchange) else c.t_mu_signchange,
            "ratio_max_cfi_over_qfi": c.ratio_max_cfi_over_qfi,
            "separation_ok": c.separation_ok if not math.isnan(c.t_cfi_max) else None,
            "ratio_ok": c.ratio_ok,
        }
        print(
            f"# coincidence: t_cfi_max={c.t_cfi_max:.12g} t_mu_signchange={c.t_mu_signchange:.12g} "
            f"ratio={c.ratio_max_cfi_over_qfi:.12g}",
            file=sys.stderr,
        )
    write_text(render(data, args.format or "csv"), args.out)
    return status


def _cmd_wigner(args) -> int:
    spec = make_spec(args.omega, args.omega, args.gamma)
    cov = evolved_covariance(spec, args.t)
    axis = np.linspace(-args.extent, args.extent, args.grid)
    data = Dataset(["x", "p", "W"], echo={"omega": args.omega, "gamma": args.gamma, "t": args.t,
                                          "grid": args.grid, "extent": args.extent})
    for x in axis:
        w = wigner_gaussian(cov, x, axis)
        data.rows.extend([float(x), float(p), float(v)] for p, v in zip(axis, w))
    write_text(render(data, args.format or "csv"), args.out)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.omega is None and args.omega0 is None and args.gamma is None:
        specs = default_battery()
    else:
        specs = [make_spec(
            1.0 if args.omega0 is None else args.omega0,
            1.0 if args.omega is None else args.omega,
            0.0 if args.gamma is None else args.gamma,
        )]
    times = args.times or DEFAULT_TIMES
    config = QuadratureConfig(panels=args.panels, nodes_per_panel=args.nodes)
    report = oracle_check(specs, times, config)
    write_text(render(report.data, args.format or "csv"), args.out)
    if not report.passed:
        print(f"oracle-check: max L2 error {report.max_error:.3g}, {report.failed_rows} failed row(s)", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_extrema(args) -> int:
    spec = make_spec(args.omega0, args.omega, args.gamma)
    found = find_width_extrema(spec, args.t_lo, args.t_hi)
    data = Dataset(["t", "kind", "B"], echo={"omega0": args.omega0, "omega": args.omega, "gamma": args.gamma,
                                              "t_lo": args.t_lo, "t_hi": args.t_hi})
    data.rows = [[e.t, e.kind, e.width] for e in found]
    write_text(render(data, args.format or "csv"), args.out)
    return EXIT_OK


SCENARIO_HELP = scenario_module.__doc__


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    common.add_argument("--out", help="output file (directory for 'figure'); default stdout / current directory")
    common.add_argument("--unwrapped", action="store_true", help="emit the continuous Gouy phase instead of the principal branch")

    parser = _Parser(prog="gouywave", description="Gouy phase, width and Fisher information of Gaussian packets in a harmonic trap.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", parents=[common], help="run a scenario file",
                       description=SCENARIO_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("scenario", help="scenario file ('-' for stdin)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", parents=[common], help="write the datasets of a figure")
    p.add_argument("id", choices=FIGURE_IDS + ("all",))
    p.add_argument("--rescale-fig7c", action="store_true", help="scale the gamma=3 CFI of panel fig7c by 1/9")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("fisher", parents=[common], help="Fisher information at resonance")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--omega", type=float, default=1.0, help="omega = omega0 (default 1)")
    p.add_argument("--times", type=float, nargs="+", default=[1.0], help="evaluation times (default 1)")
    p.add_argument("--coincidence", action="store_true", help="also locate the CFI peak and Gouy sign change")
    p.set_defaults(func=_cmd_fisher)

    p = sub.add_parser("wigner", parents=[common], help="Wigner function grid of the state at resonance")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=1.0, help="omega = omega0 (default 1)")
    p.add_argument("--t", type=float, default=0.0, help="time (default 0, the initial state)")
    p.add_argument("--grid", type=int, default=WIGNER_GRID, help=f"points per axis (default {WIGNER_GRID})")
    p.add_argument("--extent", type=float, default=WIGNER_EXTENT, help=f"half-width of the square (default {WIGNER_EXTENT:g})")
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("oracle-check", parents=[common], help="closed form against kernel quadrature")
    p.add_argument("--omega0", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--times", type=float, nargs="+", help="default 0.3 1.1 2.6")
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--nodes", type=int, default=32, help="Gauss-Legendre nodes per panel")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("extrema", parents=[common], help="local extrema of the width in a time window")
    p.add_argument("--omega0", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--t-lo", type=float, required=True)
    p.add_argument("--t-hi", type=float, required=True)
    p.set_defaults(func=_cmd_extrema)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IoFailure as exc:
        print(f"gouywave: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidParameter, ValueError) as exc:
        print(f"gouywave: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GouyWaveError as exc:
        print(f"gouywave: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
