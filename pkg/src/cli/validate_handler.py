"""
Validate Handler

Runs every problem file of a corpus directory through the engine and the
requested oracles and collects one ValidationRow per file.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Union

from src.app.pipeline import validate_problem
from src.config.settings import settings
from src.states.report import ValidationRow
from src.utils.helper import list_problem_files

logger = logging.getLogger(__name__)


class ValidateHandler:
    """
    Handles corpus validation.

    Workflow:
    1. List the problem files of the directory in name order
    2. Run each file (in a process pool when more than one worker is allowed)
    3. Return the rows in input order
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = settings.parallel_workers if workers is None else max(1, workers)

    def run(self, directory: Union[str, Path]) -> list[ValidationRow]:
        files = list_problem_files(directory)
        if not files:
            logger.info(f"No problem files in {directory}")
            return []
        if self.workers == 1 or len(files) == 1:
            return [validate_problem(path) for path in files]
        logger.debug(f"Validating {len(files)} problems with {self.workers} workers")
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(validate_problem, files))

    @staticmethod
    def all_passed(rows: list[ValidationRow]) -> bool:
        return all(row.passed for row in rows)
