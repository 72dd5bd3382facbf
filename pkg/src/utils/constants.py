from pathlib import Path


# Bundled regression corpus
CORPUS_DIR = Path(__file__).resolve().parents[2] / "corpus"
PROBLEM_SUFFIXES = (".yaml", ".yml")

# Process exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_PRECONDITION = 2
EXIT_VALIDATION_MISMATCH = 3

# Oracle method tags
METHOD_SUBDIVISION = "boundary-subdivision"
METHOD_PREIMAGE_COUNT = "preimage-count"
METHOD_CURVE = "fiber-smoothing/tangential-projection"
METHOD_CONSERVATION = "conservation-of-number"
