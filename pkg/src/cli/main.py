"""
Command-Line Interface

Typer application exposing the index engine: `elk`, `gsv`, `sigma`,
`algebra`, `oracle degree`, `oracle curve-gsv` and `validate`.

Exit codes: 0 success, 1 input error, 2 mathematical precondition failure,
3 validation mismatch.
"""

import logging
from enum import Enum
from pathlib import Path
from typing import Annotated, Callable, Optional

import typer
from pydantic import TypeAdapter
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from src.app.pipeline import FieldSource, IndexPipeline
from src.cli.render import render_report, render_validation
from src.cli.validate_handler import ValidateHandler
from src.config.settings import settings
from src.core.errors import EngineError, NotTangentError
from src.core.indices import FormulaVariant
from src.states.problem import ProblemFile
from src.states.report import IndexReport, ValidationRow
from src.utils.constants import CORPUS_DIR, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VALIDATION_MISMATCH

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="gsv-index",
    help="Exact Poincaré–Hopf and GSV indices of real polynomial vector fields.",
    no_args_is_help=True,
    add_completion=False,
)
oracle_app = typer.Typer(help="Definition-based validators.", no_args_is_help=True)
app.add_typer(oracle_app, name="oracle")

console = Console()
err_console = Console(stderr=True)


class OrderName(str, Enum):
    LOCAL = "local"
    GLOBAL = "global"


class Side(str, Enum):
    PLUS = "+"
    MINUS = "-"
    BOTH = "both"


ProblemArg = Annotated[Path, typer.Argument(help="Problem file (YAML)")]
VariantOpt = Annotated[
    Optional[FormulaVariant], typer.Option("--variant", help="Odd-case formula variant")
]
OrderOpt = Annotated[
    Optional[OrderName], typer.Option("--order", help="Monomial order: local ring or polynomial ring")
]
RadiusOpt = Annotated[Optional[str], typer.Option("--box-radius", help="Oracle box half-width, exact p/q")]
EpsilonOpt = Annotated[Optional[str], typer.Option("--epsilon", help="Smoothing level magnitude, exact p/q")]
GramOpt = Annotated[bool, typer.Option("--show-gram", help="Print the Gram matrices")]
JsonOpt = Annotated[bool, typer.Option("--json", help="Print the report as JSON")]


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True, show_path=False)],
        force=True,
    )


def _load(
    path: Path,
    variant: Optional[FormulaVariant] = None,
    order: Optional[OrderName] = None,
    box_radius: Optional[str] = None,
    epsilon: Optional[str] = None,
) -> ProblemFile:
    problem = ProblemFile.load(path)
    return problem.with_overrides(
        variant=variant.value if variant else None,
        order=order.value if order else None,
        box_radius=box_radius,
        epsilon=epsilon,
    )


def _fail(exc: EngineError, names: Optional[list[str]] = None) -> None:
    err_console.print(f"[bold red]{type(exc).__name__}[/bold red]: {escape(str(exc))}")
    if isinstance(exc, NotTangentError) and names and hasattr(exc.remainder, "render"):
        err_console.print(f"remainder of X(f) modulo f: {escape(exc.remainder.render(names))}")
    raise typer.Exit(code=exc.exit_code)


def _execute(build: Callable[[], IndexReport], json_output: bool, names: Optional[list[str]] = None) -> None:
    try:
        report = build()
    except EngineError as exc:
        _fail(exc, names)
        return
    if json_output:
        typer.echo(report.to_json())
    else:
        render_report(console, report)


def _run_command(
    path: Path,
    command: Callable[[IndexPipeline], IndexReport],
    json_output: bool,
    field_source: FieldSource = "given",
    show_gram: bool = False,
    **overrides,
) -> None:
    try:
        problem = _load(path, **overrides)
    except EngineError as exc:
        _fail(exc)
        return
    _execute(
        lambda: command(IndexPipeline(problem, field_source, show_gram)),
        json_output,
        problem.variables,
    )


# ============================================================================
# COMMANDS
# ============================================================================

@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging on stderr")] = False,
):
    _configure_logging(verbose)


@app.command()
def elk(
    problem: ProblemArg,
    order: OrderOpt = None,
    show_gram: GramOpt = False,
    json_output: JsonOpt = False,
):
    """Poincaré–Hopf index of X as the signature of the ELK form on B."""
    _run_command(problem, IndexPipeline.elk, json_output, show_gram=show_gram, order=order)


@app.command()
def gsv(
    problem: ProblemArg,
    variant: VariantOpt = None,
    order: OrderOpt = None,
    box_radius: RadiusOpt = None,
    hamiltonian: Annotated[
        bool, typer.Option("--hamiltonian", help="Use the canonical Hamiltonian field of f (even parity)")
    ] = False,
    odd_field: Annotated[
        bool, typer.Option("--odd-field", help="Use the canonical odd field of f (odd parity)")
    ] = False,
    show_gram: GramOpt = False,
    json_output: JsonOpt = False,
):
    """Complex and real GSV indices of a field tangent to f = 0."""
    if hamiltonian and odd_field:
        err_console.print("[bold red]--hamiltonian and --odd-field are mutually exclusive[/bold red]")
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    source: FieldSource = "hamiltonian" if hamiltonian else "odd-field" if odd_field else "given"
    _run_command(
        problem,
        IndexPipeline.gsv,
        json_output,
        field_source=source,
        show_gram=show_gram,
        variant=variant,
        order=order,
        box_radius=box_radius,
    )


@app.command()
def sigma(
    problem: ProblemArg,
    order: OrderOpt = None,
    show_gram: GramOpt = False,
    json_output: JsonOpt = False,
):
    """Flag K_m of the Milnor algebra and the signatures sigma_m."""
    _run_command(problem, IndexPipeline.sigma, json_output, show_gram=show_gram, order=order)


@app.command()
def algebra(
    problem: ProblemArg,
    order: OrderOpt = None,
    json_output: JsonOpt = False,
):
    """Standard basis, monomial basis and socle of B (or of A when X is absent)."""
    _run_command(problem, IndexPipeline.algebra, json_output, order=order)


@oracle_app.command("degree")
def oracle_degree(
    problem: ProblemArg,
    box_radius: RadiusOpt = None,
    json_output: JsonOpt = False,
):
    """Topological degree of X over a box around the origin, compared with elk."""
    _run_command(problem, IndexPipeline.oracle_degree, json_output, box_radius=box_radius)


@oracle_app.command("curve-gsv")
def oracle_curve_gsv(
    problem: ProblemArg,
    side: Annotated[Side, typer.Option("--side", help="Side of the singular fiber")] = Side.BOTH,
    box_radius: RadiusOpt = None,
    epsilon: EpsilonOpt = None,
    variant: VariantOpt = None,
    json_output: JsonOpt = False,
):
    """GSV index of a plane field by tracing the smoothed fiber, compared with the formula."""
    sides = {Side.PLUS: (1,), Side.MINUS: (-1,), Side.BOTH: (1, -1)}[side]
    _run_command(
        problem,
        lambda pipeline: pipeline.oracle_curve(sides),
        json_output,
        box_radius=box_radius,
        epsilon=epsilon,
        variant=variant,
    )


@app.command()
def validate(
    corpus: Annotated[Path, typer.Argument(help="Directory of problem files")] = CORPUS_DIR,
    workers: Annotated[Optional[int], typer.Option("--workers", help="Process pool size")] = None,
    json_output: JsonOpt = False,
):
    """Run every problem of a corpus and compare with its expected values."""
    handler = ValidateHandler(workers)
    try:
        rows = handler.run(corpus)
    except EngineError as exc:
        _fail(exc)
        return
    if json_output:
        typer.echo(TypeAdapter(list[ValidationRow]).dump_json(rows, indent=2).decode())
    else:
        render_validation(console, rows)
    raise typer.Exit(code=EXIT_OK if handler.all_passed(rows) else EXIT_VALIDATION_MISMATCH)


if __name__ == "__main__":
    app()
