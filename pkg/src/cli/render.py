"""
Report Rendering

Rich tables and panels for IndexReport and ValidationRow output.
"""

from typing import Sequence

from rich import box
from rich.console import Console, Group
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.states.report import IndexReport, ValidationRow


def _value(value) -> str:
    return "-" if value is None else str(value)


def _key_value_table(title: str, rows: Sequence[tuple[str, object]]) -> Table:
    table = Table(title=title, box=box.SIMPLE_HEAVY, show_header=False, title_justify="left")
    table.add_column("quantity", style="cyan")
    table.add_column("value", justify="right")
    for key, value in rows:
        table.add_row(key, _value(value))
    return table


def _problem_panel(report: IndexReport) -> Panel:
    lines = [f"[bold]variables[/bold]  {', '.join(report.variables)}  ({report.parity} parity)"]
    if report.f is not None:
        lines.append(f"[bold]f[/bold]          {report.f}")
    if report.X is not None:
        lines.append(f"[bold]X[/bold]          ({', '.join(report.X)})")
    if report.cofactor is not None:
        lines.append(f"[bold]h[/bold]          {report.cofactor}")
    lines.append(f"[bold]order[/bold]      {report.order}")
    return Panel("\n".join(lines), title=f"{report.command}: {report.name}", border_style="blue")


def render_report(console: Console, report: IndexReport) -> None:
    console.print(_problem_panel(report))

    dims = [(k, v) for k, v in report.dims.model_dump().items() if v is not None]
    if dims:
        console.print(_key_value_table("Dimensions", dims))

    signatures = [(k, v) for k, v in report.signatures.model_dump().items() if v is not None]
    if signatures:
        console.print(_key_value_table("Signatures", signatures))

    if report.flag is not None:
        flag = report.flag
        console.print(_key_value_table("Flag", [
            ("depth", flag.depth),
            ("dim K_m", " ".join(map(str, flag.dims))),
            ("dim A/K_m", " ".join(map(str, flag.quotient_dims))),
            ("sigma", " ".join(map(str, flag.sigmas))),
            ("K+", flag.k_plus),
            ("K-", flag.k_minus),
        ]))

    if report.algebra is not None:
        algebra = report.algebra
        console.print(_key_value_table("Algebra", [
            ("generators", ", ".join(algebra.generators)),
            ("order", algebra.order),
            ("dimension", algebra.dimension),
            ("basis", ", ".join(algebra.monomials)),
            ("socle", ", ".join(algebra.socle) or "0"),
            ("pairs considered", algebra.pairs_considered),
            ("pairs reduced", algebra.pairs_reduced),
        ]))

    for gram in report.grams:
        body = f"inertia (+, -, 0) = {tuple(gram.inertia)}   signature {gram.signature}"
        if gram.matrix is not None:
            width = max((len(x) for row in gram.matrix for x in row), default=1)
            rows = ["  ".join(x.rjust(width) for x in row) for row in gram.matrix]
            body = "\n".join(rows + ["", body]) if rows else body
        console.print(Panel(body, title=f"{gram.label} ({gram.size}x{gram.size})", border_style="magenta"))

    indices = [(k, v) for k, v in report.indices.model_dump().items() if v is not None]
    if report.euler is not None:
        indices += [("chi_plus", report.euler[0]), ("chi_minus", report.euler[1])]
    if indices:
        console.print(_key_value_table("Indices", indices))

    if report.variants and report.parity == "odd":
        table = Table(title="Formula variants", box=box.SIMPLE_HEAVY, title_justify="left")
        table.add_column("variant")
        table.add_column("gsv_plus", justify="right")
        table.add_column("gsv_minus", justify="right")
        for v in report.variants:
            marker = " (used)" if v.variant == report.variant else ""
            table.add_row(f"{v.variant}{marker}", str(v.gsv_plus), str(v.gsv_minus))
        console.print(table)

    if report.oracles:
        table = Table(title="Oracles", box=box.SIMPLE_HEAVY, title_justify="left")
        for column in ("oracle", "value", "formula", "method", "certified", "agrees"):
            table.add_column(column)
        for o in report.oracles:
            agrees = {None: "-", True: "[green]yes[/green]", False: "[red]no[/red]"}[o.agrees]
            table.add_row(o.name, str(o.value), _value(o.expected), o.method, str(o.certified), agrees)
        console.print(table)
        notes = [f"{o.name}: {note}" for o in report.oracles for note in o.notes]
        if notes:
            console.print(Group(*[f"[dim]{escape(n)}[/dim]" for n in notes]))

    for note in report.annotations:
        console.print(f"[yellow]note:[/yellow] {escape(note)}")


def render_validation(console: Console, rows: Sequence[ValidationRow]) -> None:
    table = Table(title="Corpus validation", box=box.SIMPLE_HEAVY, title_justify="left")
    table.add_column("problem")
    table.add_column("status")
    table.add_column("checks", justify="right")
    table.add_column("seconds", justify="right")
    table.add_column("details")
    styles = {"pass": "green", "fail": "red", "error": "red"}
    for row in rows:
        details = escape("; ".join(row.mismatches) or (row.error or ""))
        table.add_row(
            row.name,
            f"[{styles[row.status]}]{row.status}[/{styles[row.status]}]",
            str(row.checked),
            f"{row.seconds:.2f}",
            details,
        )
    console.print(table)
    passed = sum(row.passed for row in rows)
    style = "green" if passed == len(rows) else "red"
    console.print(f"[bold {style}]{passed}/{len(rows)} problems passed[/bold {style}]")
