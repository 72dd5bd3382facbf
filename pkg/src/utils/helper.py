import logging
import os
from pathlib import Path
from typing import Any, Union

import yaml

from src.core.errors import ProblemFileError
from src.utils.constants import PROBLEM_SUFFIXES

logger = logging.getLogger(__name__)


def load_yaml_document(path: Union[str, Path]) -> dict[str, Any]:
    """Load a single YAML mapping from disk."""
    path = Path(path)
    if not path.is_file():
        raise ProblemFileError(f"Problem file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ProblemFileError(f"Invalid YAML in {path}: {exc}") from exc
    if not isinstance(document, dict):
        raise ProblemFileError(f"{path} does not contain a mapping")
    return document


def list_problem_files(directory_path: Union[str, Path]) -> list[Path]:
    """All problem files of a corpus directory, sorted by name."""
    if not os.path.isdir(directory_path):
        raise ProblemFileError(f"Corpus directory not found: {directory_path}")
    files = sorted(
        p for p in Path(directory_path).iterdir()
        if p.is_file() and p.suffix.lower() in PROBLEM_SUFFIXES
    )
    logger.info(f"Found {len(files)} problem files in {directory_path}")
    return files
