"""
Run the bundled problem corpus and write a markdown summary to outputs/.

Usage:
    python -m scripts.run_corpus [corpus_dir] [--workers N]
"""

import logging
import os
import time
from typing import Optional
from datetime import datetime

import typer
from rich import box
from rich.console import Console
from rich.panel import Panel

from src.cli.render import render_validation
from src.cli.validate_handler import ValidateHandler
from src.config.settings import settings
from src.utils.constants import CORPUS_DIR

logger = logging.getLogger(__name__)


def write_markdown_report(rows, corpus_dir, elapsed: float, output_dir: str = "outputs") -> str:
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, "corpus_report.md")
    passed = sum(row.passed for row in rows)
    lines = [
        "# Corpus validation",
        "",
        f"- corpus: `{corpus_dir}`",
        f"- run at: {datetime.now().isoformat(timespec='seconds')}",
        f"- default variant: {settings.default_variant}",
        f"- result: {passed}/{len(rows)} passed in {elapsed:.1f}s",
        "",
        "| problem | status | checks | seconds | details |",
        "|---|---|---|---|---|",
    ]
    for row in rows:
        details = "; ".join(row.mismatches) or (row.error or "")
        lines.append(f"| {row.name} | {row.status} | {row.checked} | {row.seconds:.2f} | {details} |")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    return path


def run_corpus(corpus_dir=CORPUS_DIR, workers=None) -> bool:
    console = Console()
    console.print(Panel.fit(f"[bold]Validating[/bold] {corpus_dir}", box=box.ROUNDED))

    start_time = time.time()
    rows = ValidateHandler(workers).run(corpus_dir)
    elapsed = time.time() - start_time

    render_validation(console, rows)
    report_path = write_markdown_report(rows, corpus_dir, elapsed)
    console.print(f"[dim]Report saved to: {report_path}[/dim]")
    return ValidateHandler.all_passed(rows)


def main(
    corpus_dir: str = typer.Argument(str(CORPUS_DIR), help="Directory of problem files"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker processes"),
):
    logging.basicConfig(level=settings.log_level)
    raise typer.Exit(0 if run_corpus(corpus_dir, workers) else 3)


if __name__ == "__main__":
    typer.run(main)
