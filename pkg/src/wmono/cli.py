"""Command-line interface for wmono."""

import logging
from enum import Enum
from importlib.metadata import version
from pathlib import Path
from typing import Annotated, Any

import typer
from rich.console import Console
from rich.logging import RichHandler

from . import output
from .config import load_env_file, parse_env_overrides, resolve_int_setting
from .evaluation import (
    block_measure_table,
    collect_block_values,
    collect_state_values,
    evaluate_block,
)
from .exceptions import WMonoError
from .figures import DEFAULT_GRIDS, exponent_grid, figure_rows
from .monogamy import INEQUALITY_IDS
from .oracle import OracleBudget
from .statefile import parse_state_file
from .verify import FuzzConfig, oracle_crosscheck, run_fuzz

EXIT_VIOLATION = 1
EXIT_USAGE = 2

DEFAULT_EVALUATE_XS = [2.0, 3.0]
DEFAULT_EVALUATE_YS = [-1.0]
ONE_SIDED_SLACK = 1e-9

console = Console()
error_console = Console(stderr=True)
logger = logging.getLogger("wmono")

app = typer.Typer(
    help="Monogamy inequalities of W-class states: evaluate, verify, reproduce figures.",
    no_args_is_help=True,
    add_completion=False,
)


class RemarkFactorChoice(str, Enum):
    surviving = "surviving"
    literal = "literal"


class OracleMeasureChoice(str, Enum):
    concurrence = "concurrence"
    coa = "coa"
    cren = "cren"
    crenoa = "crenoa"


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        pkg_version = version("wmono")
        console.print(f"wmono version {pkg_version}")
        raise typer.Exit()


def configure_logging(verbose: bool, debug: bool) -> None:
    """Route the ``wmono`` logger to stderr through rich."""
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logger.handlers.clear()
    handler = RichHandler(console=error_console, show_path=debug, rich_tracebacks=debug)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


@app.callback()
def main_callback(
    version_flag: Annotated[
        bool | None,
        typer.Option(
            "--version",
            help="Show version and exit",
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log progress at INFO level"),
    ] = False,
    debug: Annotated[
        bool,
        typer.Option("--debug", help="Log details at DEBUG level"),
    ] = False,
) -> None:
    """Monogamy inequalities of W-class states."""
    configure_logging(verbose, debug)


def _split_ids(ids: str | None) -> list[str]:
    if not ids:
        return list(INEQUALITY_IDS)
    selected = [i.strip() for i in ids.split(",") if i.strip()]
    unknown = [i for i in selected if i not in INEQUALITY_IDS]
    if unknown:
        error_console.print(
            f"[red]Error:[/red] unknown inequality ids: {', '.join(unknown)} "
            f"(known: {', '.join(INEQUALITY_IDS)})"
        )
        raise typer.Exit(EXIT_USAGE)
    return selected


def _load_env(env_file: Path | None, env: list[str] | None) -> dict[str, str]:
    env_vars: dict[str, str] = {}
    if env_file:
        try:
            env_vars.update(load_env_file(env_file))
        except (OSError, ValueError, UnicodeDecodeError) as e:
            error_console.print(f"[red]Error loading env file:[/red] {e}")
            raise typer.Exit(EXIT_USAGE) from e
    if env:
        env_vars.update(parse_env_overrides(env))
    return env_vars


@app.command()
def evaluate(
    state_file: Annotated[
        Path,
        typer.Argument(
            help="YAML state file (n_qubits, a, b, optional block and t)",
            exists=True,
            file_okay=True,
            dir_okay=False,
        ),
    ],
    ids: Annotated[
        str | None,
        typer.Option("--ids", help="Comma-separated inequality ids (default: all)"),
    ] = None,
    x: Annotated[
        list[float] | None,
        typer.Option("--x", help="Exponent for lower bounds (x >= 2), can be repeated"),
    ] = None,
    y: Annotated[
        list[float] | None,
        typer.Option("--y", help="Exponent for upper bounds (y < 0), can be repeated"),
    ] = None,
    remark_factor: Annotated[
        RemarkFactorChoice,
        typer.Option("--remark-factor", help="Averaging factor of remark1/remark2"),
    ] = RemarkFactorChoice.surviving,
) -> None:
    """Evaluate inequalities on the state described in STATE_FILE."""
    selected = _split_ids(ids)
    xs = x or DEFAULT_EVALUATE_XS
    ys = y or DEFAULT_EVALUATE_YS

    try:
        spec = parse_state_file(state_file)
        state = collect_state_values(spec.coefficients)
        values = collect_block_values(state, spec.block, spec.t)
        reports = evaluate_block(values, selected, xs, ys, remark_factor.value)
    except WMonoError as e:
        error_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    console.print(output.measure_table(block_measure_table(state, values)))
    console.print(output.profile_panel(values.profile))
    console.print(output.report_table(reports))
    notes = output.notes_panel(reports)
    if notes is not None:
        error_console.print(notes)

    violated = [r for r in reports if r.satisfied is False]
    if violated:
        output.print_issues(
            error_console,
            [
                f"{r.inequality_id} @ {output.fmt(r.exponent)}: margin {output.fmt(r.margin)}"
                for r in violated
            ],
            "Violations",
            "red",
        )
        raise typer.Exit(EXIT_VIOLATION)


@app.command()
def figure(
    which: Annotated[
        int, typer.Argument(help="Figure number: 1 (lower bounds) or 2 (upper bounds)")
    ],
    out: Annotated[Path, typer.Option("--out", "-o", help="Output CSV path")],
    start: Annotated[
        float | None, typer.Option("--from", help="First exponent of the grid")
    ] = None,
    stop: Annotated[float | None, typer.Option("--to", help="Last exponent of the grid")] = None,
    step: Annotated[float | None, typer.Option("--step", help="Grid spacing")] = None,
) -> None:
    """Write the exact value and both bounds over an exponent grid as CSV."""
    if which not in DEFAULT_GRIDS:
        error_console.print(f"[red]Error:[/red] figure must be 1 or 2, got {which}")
        raise typer.Exit(EXIT_USAGE)

    default_start, default_stop, default_step = DEFAULT_GRIDS[which]
    try:
        grid = exponent_grid(
            default_start if start is None else start,
            default_stop if stop is None else stop,
            default_step if step is None else step,
        )
        rows = figure_rows(which, grid)
    except (ValueError, WMonoError) as e:
        error_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    try:
        output.write_figure_csv(out, rows)
    except OSError as e:
        error_console.print(f"[red]Error writing {out}:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    disordered = [r for r in rows if not r.ordered(which)]
    if disordered:
        output.print_issues(
            error_console,
            [f"exponent {output.fmt(r.exponent)} breaks the bound ordering" for r in disordered],
            "Figure rows out of order",
            "red",
        )
        raise typer.Exit(EXIT_VIOLATION)
    console.print(f"\n[green]✓[/green] {len(rows)} rows written to [bold]{out}[/bold]")


@app.command()
def verify(
    seed: Annotated[
        int | None, typer.Option("--seed", help="Master seed (default: WMONO_SEED or 0)")
    ] = None,
    trials: Annotated[
        int | None,
        typer.Option(
            "--trials", min=1, help="Number of random states (default: WMONO_TRIALS or 10000)"
        ),
    ] = None,
    min_qubits: Annotated[int | None, typer.Option("--min-qubits", help="Smallest N")] = None,
    max_qubits: Annotated[int | None, typer.Option("--max-qubits", help="Largest N")] = None,
    ids: Annotated[
        str | None, typer.Option("--ids", help="Comma-separated inequality ids (default: all)")
    ] = None,
    workers: Annotated[
        int | None,
        typer.Option(
            "--workers",
            min=0,
            help="Worker processes, 0 = all cores (default: WMONO_WORKERS or 1)",
        ),
    ] = None,
    oracle_samples: Annotated[
        int | None,
        typer.Option("--oracle-samples", min=0, help="Sub-block oracle comparisons to add"),
    ] = None,
    config: Annotated[
        Path | None,
        typer.Option(
            "--config",
            help="YAML file with FuzzConfig fields; flags override it",
            exists=True,
            file_okay=True,
            dir_okay=False,
        ),
    ] = None,
    env_file: Annotated[
        Path | None,
        typer.Option(
            "--env-file",
            "-e",
            help="Path to .env file with WMONO_* settings",
            exists=True,
            file_okay=True,
            dir_okay=False,
        ),
    ] = None,
    env: Annotated[
        list[str] | None,
        typer.Option("--env", "-E", help="Setting override (KEY=value), can be repeated"),
    ] = None,
    out: Annotated[
        Path | None, typer.Option("--out", "-o", help="CSV with one row per inequality id")
    ] = None,
    report: Annotated[Path | None, typer.Option("--report", help="YAML summary dump")] = None,
) -> None:
    """Fuzz every inequality over random W-class states; exit 1 on any violation."""
    env_vars = _load_env(env_file, env)
    try:
        defaults: dict[str, Any] = {
            "seed": resolve_int_setting("seed", None, 0, env_vars),
            "trials": resolve_int_setting("trials", None, 10_000, env_vars),
            "workers": resolve_int_setting("workers", None, 1, env_vars),
        }
    except ValueError as e:
        error_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    overrides: dict[str, Any] = {
        "seed": seed,
        "trials": trials,
        "min_qubits": min_qubits,
        "max_qubits": max_qubits,
        "workers": workers,
        "oracle_samples": oracle_samples,
        "ids": tuple(_split_ids(ids)) if ids else None,
    }
    try:
        if config is not None:
            cfg = FuzzConfig.from_yaml(config, defaults=defaults, **overrides)
        else:
            merged = {**defaults, **{k: v for k, v in overrides.items() if v is not None}}
            cfg = FuzzConfig(**merged)
    except WMonoError as e:
        error_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    summary = run_fuzz(cfg)

    console.print(output.summary_table(summary))
    console.print(output.summary_panel(summary))
    try:
        if out is not None:
            output.write_summary_csv(out, summary)
            console.print(f"[green]✓[/green] Summary CSV written to [bold]{out}[/bold]")
        if report is not None:
            error = output.write_summary_yaml(report, summary)
            if error:
                error_console.print(f"[red]Error:[/red] {error}")
                raise typer.Exit(EXIT_USAGE)
            console.print(f"[green]✓[/green] Summary YAML written to [bold]{report}[/bold]")
    except OSError as e:
        error_console.print(f"[red]Error writing output:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    if not summary.passed:
        output.print_issues(
            error_console,
            [
                f"{t.inequality_id}: {t.violated} violated, worst margin "
                f"{output.fmt(t.worst_margin)} at trial {t.worst_trial}"
                for t in summary.tallies.values()
                if t.violated
            ],
            "Violations",
            "red",
        )
        raise typer.Exit(EXIT_VIOLATION)


@app.command()
def oracle(
    measure: Annotated[
        OracleMeasureChoice,
        typer.Option("--measure", help="Measure compared with its two-qubit formula"),
    ] = OracleMeasureChoice.concurrence,
    rank: Annotated[
        int, typer.Option("--rank", min=1, max=4, help="Rank of the random states")
    ] = 2,
    budget: Annotated[
        int, typer.Option("--budget", min=1, help="Random starts per state")
    ] = 20_000,
    refine: Annotated[
        int, typer.Option("--refine", min=0, help="Refinement steps per kept start")
    ] = 200,
    trials: Annotated[int, typer.Option("--trials", min=1, help="Number of random states")] = 100,
    seed: Annotated[
        int | None, typer.Option("--seed", help="Master seed (default: WMONO_SEED or 0)")
    ] = None,
    tolerance: Annotated[
        float, typer.Option("--tolerance", help="Largest accepted oracle deviation")
    ] = 1e-3,
    env_file: Annotated[
        Path | None,
        typer.Option(
            "--env-file",
            "-e",
            help="Path to .env file with WMONO_* settings",
            exists=True,
            file_okay=True,
            dir_okay=False,
        ),
    ] = None,
) -> None:
    """Compare the convex-roof oracle with the closed two-qubit formulas."""
    env_vars = _load_env(env_file, None)
    try:
        resolved_seed = resolve_int_setting("seed", seed, 0, env_vars)
        rows = oracle_crosscheck(
            measure.value,
            rank=rank,
            budget=OracleBudget(starts=budget, refine_steps=refine),
            trials=trials,
            seed=resolved_seed,
        )
    except (ValueError, WMonoError) as e:
        error_console.print(f"[red]Error:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e

    console.print(output.oracle_table(rows))

    problems = []
    overshoot = [r for r in rows if r.signed_gap < -ONE_SIDED_SLACK]
    if overshoot:
        problems.append(
            f"{len(overshoot)} results beat the exact value by more than {ONE_SIDED_SLACK}"
        )
    far = [r for r in rows if r.deviation > tolerance]
    if far:
        problems.append(f"{len(far)} results deviate by more than {tolerance}")
    if problems:
        output.print_issues(error_console, problems, "Oracle check failed", "red")
        raise typer.Exit(EXIT_VIOLATION)


def main() -> None:
    """Entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
