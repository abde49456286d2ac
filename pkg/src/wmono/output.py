"""CSV, YAML and console rendering of reports, figure data and fuzz summaries."""

import csv
import math
import os
import tempfile
from collections.abc import Iterable, Sequence
from io import StringIO
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from .figures import FigureRow
from .models import MeasureValue
from .monogamy import InequalityReport, OrderingProfile
from .verify import FuzzSummary, OracleRow

FIGURE_HEADER = ("exponent", "exact", "bound_new", "bound_old")
SUMMARY_HEADER = (
    "inequality_id",
    "evaluated",
    "applicable",
    "satisfied",
    "violated",
    "worst_margin",
    "worst_trial",
    "worst_exponent",
    "worst_block",
)


def fmt(value: float | None) -> str:
    """Console number format: 9 significant digits."""
    if value is None:
        return "-"
    if math.isnan(value):
        return "n/a"
    return f"{value:.9g}"


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_atomic(path: Path, content: str) -> None:
    """Write ``content`` through a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """RFC-4180 style CSV with ``\\n`` line endings and full float precision."""
    stream = StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_value(v) for v in row])
    return stream.getvalue()


def write_figure_csv(path: Path, rows: Sequence[FigureRow]) -> None:
    write_atomic(
        path,
        csv_text(FIGURE_HEADER, ((r.exponent, r.exact, r.bound_new, r.bound_old) for r in rows)),
    )


def summary_rows(summary: FuzzSummary) -> list[tuple[Any, ...]]:
    rows = []
    for inequality_id, tally in summary.tallies.items():
        rows.append(
            (
                inequality_id,
                tally.evaluated,
                tally.applicable,
                tally.satisfied,
                tally.violated,
                tally.worst_margin if math.isfinite(tally.worst_margin) else None,
                tally.worst_trial,
                tally.worst_exponent,
                tally.worst_block,
            )
        )
    return rows


def write_summary_csv(path: Path, summary: FuzzSummary) -> None:
    write_atomic(path, csv_text(SUMMARY_HEADER, summary_rows(summary)))


def validate_yaml(yaml_string: str) -> tuple[bool, str | None]:
    """Check that a YAML string parses back.

    Returns:
        Tuple of (is_valid, error_message). error_message is None if valid.
    """
    yaml = YAML(typ="safe")
    try:
        yaml.load(StringIO(yaml_string))
        return True, None
    except YAMLError as e:
        return False, f"Invalid YAML output: {e}"


def summary_yaml(summary: FuzzSummary) -> str:
    yaml = YAML()
    yaml.default_flow_style = False
    yaml.indent(mapping=2, sequence=4, offset=2)
    stream = StringIO()
    yaml.dump(summary.as_dict(), stream)
    return stream.getvalue()


def write_summary_yaml(path: Path, summary: FuzzSummary) -> str | None:
    """Dump the summary as YAML; returns a validation error instead of writing bad output."""
    text = summary_yaml(summary)
    is_valid, error = validate_yaml(text)
    if is_valid:
        write_atomic(path, text)
    return error


REPORT_COLUMNS = ("id", "exp", "lhs", "op", "rhs", "margin", "baseline", "t", "status", "adjacent")

def _verdict(satisfied: bool | None) -> str:
    if satisfied is None:
        return "[yellow]n/a[/yellow]"
    return "[green]satisfied[/green]" if satisfied else "[red]VIOLATED[/red]"


def _adjacent(report: InequalityReport) -> str:
    if report.adjacent_split is not None:
        return f"t={report.adjacent_split} " + _verdict(report.adjacent_satisfied)
    if report.adjacent_satisfied is not None:
        return _verdict(report.adjacent_satisfied)
    return "-"


def report_table(reports: Sequence[InequalityReport], title: str = "Inequalities") -> Table:
    table = Table(title=title)
    for column in REPORT_COLUMNS:
        table.add_column(
            column, justify="left" if column in ("id", "status", "adjacent") else "right"
        )
    for r in reports:
        table.add_row(
            r.inequality_id,
            fmt(r.exponent),
            fmt(r.lhs),
            r.direction.value,
            fmt(r.rhs),
            fmt(r.margin),
            fmt(r.baseline_rhs),
            str(r.split) if r.split is not None else "-",
            _verdict(r.satisfied),
            _adjacent(r),
        )
    return table


def notes_panel(reports: Sequence[InequalityReport]) -> Panel | None:
    """Panel listing unmet hypotheses and report notes, or None if there are none."""
    lines = []
    for r in reports:
        failed = [i for i, ok in enumerate(r.hypothesis_ok, start=1) if not ok]
        details = list(r.notes)
        if failed and r.satisfied is None:
            details.insert(0, f"unmet hypothesis flags {failed}")
        if details:
            lines.append(
                f"[yellow]•[/yellow] {r.inequality_id} @ {fmt(r.exponent)}: " + "; ".join(details)
            )
    if not lines:
        return None
    return Panel("\n".join(lines), title="[yellow]Notes[/yellow]", border_style="yellow")


def measure_table(values: Sequence[MeasureValue]) -> Table:
    table = Table(title="Measures")
    table.add_column("subject")
    table.add_column("measure")
    table.add_column("value", justify="right")
    table.add_column("notes", style="dim")
    for v in values:
        table.add_row(v.subject, v.kind.value, fmt(v.value), "; ".join(v.notes))
    return table


def profile_panel(profile: OrderingProfile) -> Panel:
    lines = [
        f"block {profile.block}  m={profile.m}  status {profile.status}",
        f"pattern {profile.pattern() or '-'}  (position i: pair vs downstream block)",
        f"adjacent reading: status {profile.adjacent_status}  "
        f"pattern {profile.pattern('adjacent') or '-'}  (pair vs next pair)",
    ]
    return Panel("\n".join(lines), title="[cyan]Ordering[/cyan]", border_style="cyan")


def summary_table(summary: FuzzSummary) -> Table:
    table = Table(title=f"Fuzz summary (seed {summary.seed}, {summary.trials} trials)")
    for column in SUMMARY_HEADER[:6]:
        table.add_column(column, justify="left" if column == "inequality_id" else "right")
    for row in summary_rows(summary):
        violated = row[4]
        style = "red" if violated else None
        table.add_row(*(fmt(v) if isinstance(v, float) else str(v) for v in row[:6]), style=style)
    return table


def summary_panel(summary: FuzzSummary) -> Panel:
    lines = [
        f"CKW saturation max deviation: {fmt(summary.ckw_max_deviation)}",
        f"measure identity max deviation: {fmt(summary.identity_max_deviation)}",
        f"dominance checks: {summary.dominance_checked}, failures "
        + ", ".join(f"{k}={v}" for k, v in summary.dominance_failures.items()),
        f"x=2 boundary max deviation: {fmt(summary.boundary_max_deviation)}",
        f"th3 ratio max deviation: {fmt(summary.th3_ratio_max_deviation)}",
        f"random pure states: {summary.general_states}",
    ]
    if summary.oracle_max_deviation is not None:
        lines.append(
            f"oracle max deviation: {fmt(summary.oracle_max_deviation)} "
            f"over {summary.oracle_checked} blocks"
        )
    return Panel("\n".join(lines), title="[cyan]Checks[/cyan]", border_style="cyan")


def oracle_table(rows: Sequence[OracleRow]) -> Table:
    table = Table(title="Oracle cross-check")
    for column in ("measure", "rank", "trials", "max deviation", "min signed gap"):
        table.add_column(column, justify="left" if column == "measure" else "right")
    by_measure: dict[str, list[OracleRow]] = {}
    for row in rows:
        by_measure.setdefault(row.measure, []).append(row)
    for measure, group in by_measure.items():
        table.add_row(
            measure,
            str(group[0].rank),
            str(len(group)),
            fmt(max(r.deviation for r in group)),
            fmt(min(r.signed_gap for r in group)),
        )
    return table


def print_issues(console: Console, lines: Sequence[str], title: str, style: str) -> None:
    """Bulleted panel in the given style, printed after a blank line."""
    console.print()
    console.print(
        Panel(
            "\n".join(f"[{style}]•[/{style}] {line}" for line in lines),
            title=f"[{style}]{title}[/{style}]",
            border_style=style,
        )
    )
