"""Command-line front end.

Subcommands: materials, athermal, dispersion, mtdm, figures, sweep,
selfcheck.  Exit codes: 0 success, 2 usage or config error, 3 domain or
convergence error.  All computation happens before any file is written,
so a nonzero exit leaves no partial output.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .capacity import evaluate_channel
from .config import RunConfig, load_config
from .errors import AwgLinkError, ConfigError
from .materials import DERIV_EXACT, DERIV_PAPER, derivative_self_check
from .sweeps import FIGURE_IDS, run_figure, run_sweep
from .tableio import (
    SweepTable,
    fmt_number,
    grid,
    write_csv,
    write_gnuplot,
    write_manifest,
)
from .waveguide import drift_report, solve_athermal_core_width, thermal_scan

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _global_args(p: argparse.ArgumentParser, top: bool) -> None:
    """Global options, registered on the main parser and repeated on every
    subparser (with suppressed defaults) so they work in either position."""
    suppress = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--config", metavar="PATH", help="TOML configuration file", **suppress)
    p.add_argument(
        "--out", metavar="DIR", help="output directory",
        **({"default": "."} if top else {"default": argparse.SUPPRESS}),
    )
    p.add_argument(
        "--derivative-mode",
        choices=(DERIV_PAPER, DERIV_EXACT),
        help="second-derivative form used for material dispersion",
        **suppress,
    )
    p.add_argument(
        "--index-mode",
        choices=("anchored", "material"),
        help="how design indices respond to temperature",
        **suppress,
    )
    p.add_argument(
        "--emit-gnuplot",
        action="store_true",
        help="also write a gnuplot script per dataset",
        **suppress,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awglink",
        description=(
            "Thermal and chromatic-dispersion model of a hybrid-material "
            "arrayed waveguide grating with MTDM link-capacity budgeting."
        ),
    )
    _global_args(parser, top=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("materials", help="tabulate indices and derivatives, then self-check")
    _global_args(p, top=False)
    _grid_args(p)

    p = sub.add_parser("athermal", help="thermal scan of a design, or core-width solve")
    _global_args(p, top=False)
    p.add_argument("--t-min", type=float, default=20.0)
    p.add_argument("--t-max", type=float, default=70.0)
    p.add_argument("--t-step", type=float, default=1.0)
    p.add_argument("--solve", action="store_true", help="solve for the athermal core width")
    p.add_argument("--bracket-lo", type=float, default=0.1, help="um")
    p.add_argument("--bracket-hi", type=float, default=20.0, help="um")
    _design_args(p)

    p = sub.add_parser("dispersion", help="dispersion and bit-rate spectrum over wavelength")
    _global_args(p, top=False)
    p.add_argument("--lambda-min", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=1.64)
    p.add_argument("--lambda-step", type=float, default=0.01)
    _design_args(p)

    p = sub.add_parser("mtdm", help="bit rates versus link count at one wavelength")
    _global_args(p, top=False)
    p.add_argument("--lambda", dest="lam", type=float, help="evaluation wavelength in um")
    _design_args(p)

    p = sub.add_parser("figures", help="emit figure datasets and a manifest")
    _global_args(p, top=False)
    p.add_argument("ids", nargs="+", help="figure ids (fig4..fig13) or 'all'")

    p = sub.add_parser("sweep", help="run the sweep defined in the config file")
    _global_args(p, top=False)

    p = sub.add_parser("selfcheck", help="finite-difference validation of the derivatives")
    _global_args(p, top=False)
    _grid_args(p, lambda_step=0.064, t_step=5.0)

    return parser


def _grid_args(p: argparse.ArgumentParser, lambda_step: float = 0.01, t_step: float = 1.0) -> None:
    p.add_argument("--lambda-min", type=float, default=1.0)
    p.add_argument("--lambda-max", type=float, default=1.64)
    p.add_argument("--lambda-step", type=float, default=lambda_step)
    p.add_argument("--t-min", type=float, default=20.0)
    p.add_argument("--t-max", type=float, default=70.0)
    p.add_argument("--t-step", type=float, default=t_step)


def _design_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--core-width", type=float, help="um")
    p.add_argument("--n1", type=float, help="design core index")
    p.add_argument("--n2", type=float, help="design cladding index")
    p.add_argument("--temperature", type=float, help="degC")


def _load(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    design = config.design
    budget = config.budget
    if args.index_mode:
        design = replace(design, index_mode=args.index_mode)
    if getattr(args, "core_width", None) is not None:
        design = replace(design, core_width_a=args.core_width)
    if getattr(args, "n1", None) is not None:
        design = replace(design, n1_design=args.n1)
    if getattr(args, "n2", None) is not None:
        design = replace(design, n2_design=args.n2)
    if getattr(args, "temperature", None) is not None:
        budget = replace(budget, temperature=args.temperature)
    derivative_mode = args.derivative_mode or config.derivative_mode
    return replace(
        config,
        design=design,
        budget=budget,
        derivative_mode=derivative_mode,
        emit_gnuplot=config.emit_gnuplot or args.emit_gnuplot,
    )


def _y_factor(config: RunConfig):
    """Config y-mode as an evaluate_channel factor: None tracks the design."""
    if config.y_mode in (None, "auto"):
        return None
    return float(config.y_mode)


def _write_tables(out_dir: Path, tables, emit_gnuplot: bool, manifest: bool) -> list:
    written = []
    entries = []
    for table in tables:
        csv_name = f"{table.name}.csv"
        write_csv(out_dir / csv_name, table)
        written.append(csv_name)
        entries.append((table.name, csv_name, table.metadata))
        if emit_gnuplot:
            gp_name = f"{table.name}.gp"
            write_gnuplot(out_dir / gp_name, table, csv_name)
            written.append(gp_name)
    if manifest:
        write_manifest(out_dir / "manifest.txt", entries)
        written.append("manifest.txt")
    return written


def cmd_materials(args, config: RunConfig) -> int:
    lam_grid = grid(args.lambda_min, args.lambda_max, args.lambda_step)
    t_grid = grid(args.t_min, args.t_max, args.t_step)
    core = config.design.core
    cladding = config.design.cladding

    report = derivative_self_check(lam_grid, t_grid, core, cladding)
    for line in report.lines():
        print(line)
    if not report.passed:
        print("self-check FAILED; no files written", file=sys.stderr)
        return EXIT_DOMAIN

    rows = []
    for lam in lam_grid:
        for t in t_grid:
            rows.append(
                (
                    lam,
                    t,
                    core.index(lam, t),
                    core.dn_dlambda(lam, t),
                    core.d2n_dlambda2(lam, t, config.derivative_mode),
                    core.dn_dT(lam, t),
                    cladding.index(lam, t),
                    cladding.dn_dT(lam, t),
                )
            )
    table = SweepTable(
        name="materials",
        columns=("lambda_um", "T_C", "n1", "dn1_dlam", "d2n1_dlam2", "dn1_dT", "n2", "dn2_dT"),
        rows=tuple(rows),
        metadata={
            "derivative_mode": config.derivative_mode,
            "lambda_grid_um": f"{fmt_number(lam_grid[0])}..{fmt_number(lam_grid[-1])} step {fmt_number(args.lambda_step)}",
            "t_grid_C": f"{fmt_number(t_grid[0])}..{fmt_number(t_grid[-1])} step {fmt_number(args.t_step)}",
        },
    )
    written = _write_tables(Path(args.out), [table], config.emit_gnuplot, manifest=False)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


def cmd_selfcheck(args, config: RunConfig) -> int:
    lam_grid = grid(args.lambda_min, args.lambda_max, args.lambda_step)
    t_grid = grid(args.t_min, args.t_max, args.t_step)
    report = derivative_self_check(lam_grid, t_grid, config.design.core, config.design.cladding)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_DOMAIN


def cmd_athermal(args, config: RunConfig) -> int:
    design = config.design
    if args.solve:
        result = solve_athermal_core_width(
            design, config.budget.temperature, (args.bracket_lo, args.bracket_hi)
        )
        print(f"a* = {fmt_number(result.root)} um")
        print(f"residual = {fmt_number(result.residual)}")
        print(f"iterations = {result.iterations}")
        return EXIT_OK

    t_grid = grid(args.t_min, args.t_max, args.t_step)
    response = thermal_scan(design, t_grid)
    report = drift_report(design, t_grid)

    table = SweepTable(
        name="athermal_scan",
        columns=("T_C", "n_c", "dnc_dT", "lambda_c_um", "delta_lambda_nm"),
        rows=tuple(response.rows()),
        metadata={
            "t_grid_C": f"{fmt_number(t_grid[0])}..{fmt_number(t_grid[-1])} step {fmt_number(args.t_step)}",
            "design.core_width_a_um": fmt_number(design.core_width_a),
            "design.n1_design": fmt_number(design.n1_design),
            "design.n2_design": fmt_number(design.n2_design),
            "design.alpha_sub_per_C": fmt_number(design.alpha_sub),
            "design.lambda0_um": fmt_number(design.lambda0),
            "design.t0_C": fmt_number(design.t0),
            "design.index_mode": design.index_mode,
        },
    )
    written = _write_tables(Path(args.out), [table], config.emit_gnuplot, manifest=False)
    for line in report.lines():
        print(line)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


def _link_table(name: str, config: RunConfig, samples, extra_metadata: dict) -> SweepTable:
    budget = config.budget
    rows = tuple(
        (
            s.lam, s.dm, s.dw, s.dt, s.delta_tau_ns, s.brm_gbps, s.brlink_gbps,
            float(nl), float(budget.num_channels), float(temp),
        )
        for s, nl, temp in samples
    )
    metadata = {
        "design.core_width_a_um": fmt_number(config.design.core_width_a),
        "design.n1_design": fmt_number(config.design.n1_design),
        "design.n2_design": fmt_number(config.design.n2_design),
        "design.index_mode": config.design.index_mode,
        "budget.fiber_length_km": fmt_number(budget.fiber_length_km),
        "budget.num_channels": fmt_number(budget.num_channels),
        "derivative_mode": config.derivative_mode,
        "y_mode": "auto" if _y_factor(config) is None else f"constant:{fmt_number(_y_factor(config))}",
    }
    metadata.update(extra_metadata)
    return SweepTable(
        name=name,
        columns=(
            "lambda_um", "Dm", "Dw", "Dt", "delta_tau_ns",
            "Brm_Gbps", "BrLink_Gbps", "NL", "Nch", "T_C",
        ),
        rows=rows,
        metadata=metadata,
    )


def cmd_dispersion(args, config: RunConfig) -> int:
    lam_grid = grid(args.lambda_min, args.lambda_max, args.lambda_step)
    y = _y_factor(config)
    samples = [
        (
            evaluate_channel(lam, config.design, config.budget, config.derivative_mode, y),
            config.budget.num_links,
            config.budget.temperature,
        )
        for lam in lam_grid
    ]
    table = _link_table(
        "dispersion",
        config,
        samples,
        {
            "lambda_grid_um": f"{fmt_number(lam_grid[0])}..{fmt_number(lam_grid[-1])} step {fmt_number(args.lambda_step)}",
            "budget.num_links": fmt_number(config.budget.num_links),
        },
    )
    written = _write_tables(Path(args.out), [table], config.emit_gnuplot, manifest=False)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


def cmd_mtdm(args, config: RunConfig) -> int:
    lam = args.lam if args.lam is not None else config.design.lambda0
    y = _y_factor(config)
    samples = []
    for nl in range(1, config.budget.num_links + 1):
        budget = replace(config.budget, num_links=nl)
        samples.append(
            (
                evaluate_channel(lam, config.design, budget, config.derivative_mode, y),
                nl,
                budget.temperature,
            )
        )
    table = _link_table(
        "mtdm",
        config,
        samples,
        {
            "evaluation_lambda_um": fmt_number(lam),
            "nl_range": f"1..{config.budget.num_links}",
        },
    )
    written = _write_tables(Path(args.out), [table], config.emit_gnuplot, manifest=False)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


def cmd_figures(args, config: RunConfig) -> int:
    ids = list(FIGURE_IDS) if "all" in args.ids else args.ids
    for fid in ids:
        if fid not in FIGURE_IDS:
            print(
                f"unknown figure id {fid!r}; known: {', '.join(FIGURE_IDS)} or 'all'",
                file=sys.stderr,
            )
            return EXIT_USAGE
    tables = [
        run_figure(fid, config.design, config.budget, config.derivative_mode, config.y_mode)
        for fid in ids
    ]
    written = _write_tables(Path(args.out), tables, config.emit_gnuplot, manifest=True)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


def cmd_sweep(args, config: RunConfig) -> int:
    if config.sweep is None:
        raise ConfigError("sweep command needs a [sweep] block in the config file")
    y_mode = config.y_mode if config.y_mode is not None else "auto"
    table = run_sweep(config.sweep, config.design, config.budget, config.derivative_mode, y_mode)
    written = _write_tables(Path(args.out), [table], config.emit_gnuplot, manifest=False)
    print(f"wrote {', '.join(written)}")
    return EXIT_OK


_COMMANDS = {
    "materials": cmd_materials,
    "selfcheck": cmd_selfcheck,
    "athermal": cmd_athermal,
    "dispersion": cmd_dispersion,
    "mtdm": cmd_mtdm,
    "figures": cmd_figures,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = _load(args)
        return _COMMANDS[args.command](args, config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AwgLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
