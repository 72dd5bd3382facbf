"""
Print the odd-case terms of the calibration fixtures under both formula
variants and report which variant agrees with the known real indices.

Usage:
    python -m scripts.calibrate_variant
"""

import logging

from rich import box
from rich.console import Console
from rich.table import Table

from src.config.settings import settings
from src.core.indices import CALIBRATION_FIXTURES, FormulaVariant, calibrate_variant, gsv_real_terms
from src.core.parser import parse_poly, parse_vector_field

logger = logging.getLogger(__name__)


def calibration_table() -> Table:
    table = Table(title="Odd-case calibration", box=box.SIMPLE_HEAVY, title_justify="left")
    table.add_column("f")
    table.add_column("X")
    table.add_column("sgn(B,h,J)", justify="right")
    table.add_column("sgn(A,1,Hess)", justify="right")
    table.add_column("sigmas")
    table.add_column("expected", justify="right")
    for variant in FormulaVariant:
        table.add_column(variant.value, justify="right")

    for f_text, variables, field_texts, expected in CALIBRATION_FIXTURES:
        f = parse_poly(f_text, variables)
        X = parse_vector_field(field_texts, variables)
        terms = gsv_real_terms(f, X)
        cells = []
        for variant in FormulaVariant:
            values = terms.values(variant)
            style = "green" if values == expected else "red"
            cells.append(f"[{style}]{values}[/{style}]")
        table.add_row(
            f_text,
            ", ".join(field_texts),
            str(terms.sgn_b_h_j),
            str(terms.sgn_a_hess),
            str(list(terms.sigma.sigmas)),
            str(expected),
            *cells,
        )
    return table


if __name__ == "__main__":
    logging.basicConfig(level=settings.log_level)
    console = Console()
    console.print(calibration_table())
    try:
        chosen = calibrate_variant()
    except RuntimeError as exc:
        console.print(f"[bold red]{exc}[/bold red]")
        raise SystemExit(1)
    console.print(f"[bold green]Agreeing variant:[/bold green] {chosen.value}")
    if chosen.value != settings.default_variant:
        console.print(f"[yellow]Configured default is {settings.default_variant}[/yellow]")
