import json

import pytest
from typer.testing import CliRunner

from src.app.pipeline import IndexPipeline
from src.cli.main import app
from src.core.errors import InputError, NotTangentError, PreconditionError
from src.states.problem import ProblemFile
from src.states.report import IndexReport
from src.utils.constants import CORPUS_DIR, EXIT_INPUT_ERROR, EXIT_PRECONDITION

runner = CliRunner()

NODE = """\
variables: [x, y]
X: ["x", "y"]
expected:
  elk: 1
  dim_b: 1
"""

CONE = """\
variables: [x, y, z]
f: "x^2 + y^2 - z^2"
X: ["x", "y", "z"]
"""

HYPERBOLA = """\
variables: [x, y]
f: "x^2 - y^2"
X: ["x", "y"]
"""


def _invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


# ============================================================================
# EXIT CODES
# ============================================================================

def test_elk_succeeds(write_problem):
    result = _invoke("elk", write_problem("node", NODE))
    assert result.exit_code == 0
    assert "node" in result.stdout


def test_malformed_expression_exits_with_input_error(write_problem):
    path = write_problem("broken", 'variables: [x, y]\nX: ["x +", "y"]\n')
    assert _invoke("elk", path).exit_code == EXIT_INPUT_ERROR


def test_missing_problem_file_exits_with_input_error(tmp_path):
    assert _invoke("elk", tmp_path / "absent.yaml").exit_code == EXIT_INPUT_ERROR


def test_float_option_is_rejected(write_problem):
    path = write_problem("float", NODE + "options:\n  box_radius: 0.5\n")
    assert _invoke("oracle", "degree", path).exit_code == EXIT_INPUT_ERROR


def test_not_tangent_field_exits_with_precondition_failure(write_problem):
    path = write_problem("tangent", 'variables: [x, y]\nf: "x^2 + y^2"\nX: ["1", "0"]\n')
    assert _invoke("gsv", path).exit_code == EXIT_PRECONDITION


def test_canonical_field_flags_are_exclusive(write_problem):
    path = write_problem("hyperbola", HYPERBOLA)
    assert _invoke("gsv", path, "--hamiltonian", "--odd-field").exit_code == EXIT_INPUT_ERROR


def test_hamiltonian_flag_needs_even_parity(write_problem):
    path = write_problem("cone", CONE)
    assert _invoke("gsv", path, "--hamiltonian").exit_code == EXIT_PRECONDITION


def test_error_families_carry_the_cli_exit_codes():
    assert InputError.exit_code == EXIT_INPUT_ERROR
    assert PreconditionError.exit_code == EXIT_PRECONDITION
    assert NotTangentError(None).exit_code == EXIT_PRECONDITION


# ============================================================================
# JSON REPORTS
# ============================================================================

def test_elk_json_report(write_problem):
    result = _invoke("elk", write_problem("node", NODE), "--json")
    assert result.exit_code == 0
    report = IndexReport.from_json(result.stdout)
    assert report.command == "elk"
    assert report.indices.elk == 1
    assert report.dims.dim_b == 1


def test_gsv_json_report_for_odd_parity(write_problem):
    result = _invoke("gsv", write_problem("cone", CONE), "--json")
    assert result.exit_code == 0
    report = IndexReport.from_json(result.stdout)
    assert report.parity == "odd"
    assert (report.indices.gsv_plus, report.indices.gsv_minus) == (0, 2)
    assert report.indices.gsv_complex == 2
    assert report.flag.sigmas == [0, -1]
    assert {v.variant for v in report.variants} == {"reduced", "as-published"}


def test_variant_override(write_problem):
    result = _invoke("gsv", write_problem("cone", CONE), "--variant", "as-published", "--json")
    report = IndexReport.from_json(result.stdout)
    assert report.variant == "as-published"
    assert (report.indices.gsv_plus, report.indices.gsv_minus) == (-1, 1)


def test_json_output_matches_the_pipeline_report(write_problem):
    path = write_problem("cone", CONE)
    result = _invoke("gsv", path, "--show-gram", "--json")
    expected = IndexPipeline(ProblemFile.load(path), show_gram=True).gsv()
    assert IndexReport.from_json(result.stdout) == expected
    assert all(gram.matrix is not None for gram in expected.grams[:2])


def test_hamiltonian_field_report(write_problem):
    result = _invoke("gsv", write_problem("hyperbola", HYPERBOLA), "--hamiltonian", "--json")
    report = IndexReport.from_json(result.stdout)
    assert (report.indices.gsv_plus, report.indices.gsv_minus) == (0, 0)


def test_algebra_report(write_problem):
    path = write_problem("socle", 'variables: [x, y]\nX: ["x^2", "y^3"]\n')
    report = IndexReport.from_json(_invoke("algebra", path, "--json").stdout)
    assert report.algebra.dimension == 6
    assert report.algebra.socle == ["x*y^2"]


def test_global_order_adds_global_dimensions(write_problem):
    path = write_problem("fold", 'variables: [x, y]\nX: ["2*x + 3*x^2", "y"]\n')
    report = IndexReport.from_json(_invoke("elk", path, "--order", "global", "--json").stdout)
    assert report.dims.dim_b == 1
    assert report.dims.global_dim_b == 2


def test_degree_oracle_report(write_problem):
    result = _invoke("oracle", "degree", write_problem("node", NODE), "--json")
    assert result.exit_code == 0
    report = IndexReport.from_json(result.stdout)
    [oracle] = report.oracles
    assert oracle.value == 1
    assert oracle.agrees


def test_curve_oracle_single_side(write_problem):
    result = _invoke("oracle", "curve-gsv", write_problem("hyperbola", HYPERBOLA), "--side", "+", "--json")
    report = IndexReport.from_json(result.stdout)
    assert [o.name for o in report.oracles] == ["curve_gsv+1"]
    assert report.oracles[0].value == 2


# ============================================================================
# CORPUS VALIDATION
# ============================================================================

def test_validate_reports_mismatches(write_problem, tmp_path):
    write_problem("node", NODE)
    write_problem("wrong", NODE.replace("elk: 1", "elk: -1"))
    result = _invoke("validate", tmp_path, "--workers", "1", "--json")
    assert result.exit_code == 3
    rows = {row["name"]: row for row in json.loads(result.stdout)}
    assert rows["node"]["status"] == "pass"
    assert rows["wrong"]["status"] == "fail"
    assert rows["wrong"]["mismatches"]


def test_expected_errors_count_as_passes(write_problem, tmp_path):
    write_problem(
        "tangent",
        'variables: [x, y]\nf: "x^2 + y^2"\nX: ["1", "0"]\nexpected:\n  error: NotTangentError\n',
    )
    assert _invoke("validate", tmp_path, "--workers", "1").exit_code == 0


def test_validate_empty_directory(tmp_path):
    assert _invoke("validate", tmp_path).exit_code == 0


def test_validate_missing_directory(tmp_path):
    assert _invoke("validate", tmp_path / "absent").exit_code == 1


@pytest.mark.slow
def test_bundled_corpus_passes():
    result = _invoke("validate", CORPUS_DIR, "--workers", "1", "--json")
    rows = json.loads(result.stdout)
    assert len(rows) == 22
    assert [row["name"] for row in rows if row["status"] != "pass"] == []
    assert result.exit_code == 0
