"""
Index Pipeline

Runs the engine on a problem file and assembles an IndexReport: dimensions,
signatures, the flag and its sigma vector, all indices, both formula
variants, optional Gram matrices and the oracle comparisons requested by
the problem's options. `validate_problem` is the per-file unit of work of
the corpus runner.
"""

import logging
import time
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Union

from src.config.settings import settings
from src.core.algebra import QuotientAlgebra, build_algebra, quotient_dim, socle
from src.core.calculus import cofactor, gradient, hessian_det, jacobian_det
from src.core.errors import EngineError, InputError
from src.core.forms import choose_functional, relative_form
from src.core.indices import (
    FormulaVariant,
    canonical_hamiltonian,
    canonical_odd_field,
    euler_characteristics,
    field_algebra,
    flag,
    gsv_complex,
    gsv_real_terms,
    is_even,
    milnor_algebra,
    odd_complement_holds,
    relative_multiplicity,
    sigma_forms,
)
from src.core.polynomial import Polynomial, VectorField
from src.core.sbasis import MonomialOrder
from src.oracle.curve import curve_gsv
from src.oracle.degree import local_degree
from src.oracle.intervals import Box, fiber_side_sampled
from src.oracle.verdict import OracleVerdict
from src.states.problem import ProblemFile
from src.states.report import (
    AlgebraSummary,
    FlagReport,
    GramReport,
    IndexReport,
    OracleComparison,
    ValidationRow,
    VariantValues,
)

logger = logging.getLogger(__name__)

FieldSource = Literal["given", "hamiltonian", "odd-field"]


def _gram_report(label: str, form, show_matrix: bool) -> GramReport:
    return GramReport(
        label=label,
        size=form.size,
        inertia=list(form.inertia.as_tuple()),
        signature=form.inertia.signature,
        matrix=form.to_strings() if show_matrix else None,
    )


def _comparison(name: str, verdict: OracleVerdict, expected: Optional[int]) -> OracleComparison:
    return OracleComparison(
        name=name,
        value=verdict.value,
        method=verdict.method,
        certified=verdict.certified,
        expected=expected,
        agrees=None if expected is None else verdict.value == expected,
        effort=dict(verdict.effort),
        notes=list(verdict.notes),
    )


class IndexPipeline:
    """
    Computes the sections of an IndexReport for one problem.

    Each public method corresponds to a CLI command and returns a fresh report;
    `full` runs every section the problem supports plus its requested oracles.
    """

    def __init__(
        self,
        problem: ProblemFile,
        field_source: FieldSource = "given",
        show_gram: bool = False,
    ):
        self.problem = problem
        self.show_gram = show_gram
        self.names = problem.variables
        self.f: Optional[Polynomial] = problem.polynomial()
        self.X: Optional[VectorField] = self._resolve_field(field_source)
        self.variant = FormulaVariant(problem.options.variant or settings.default_variant)

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------

    def _resolve_field(self, source: FieldSource) -> Optional[VectorField]:
        if source == "given":
            return self.problem.field()
        if self.f is None:
            raise InputError(f"--{source} needs the hypersurface f")
        if source == "hamiltonian":
            return canonical_hamiltonian(self.f)
        return canonical_odd_field(self.f, 0)

    def _require_f(self) -> Polynomial:
        if self.f is None:
            raise InputError(f"Problem '{self.problem.name}' has no hypersurface f")
        return self.f

    def _require_field(self) -> VectorField:
        if self.X is None:
            raise InputError(f"Problem '{self.problem.name}' has no vector field X")
        return self.X

    def _radius(self) -> Fraction:
        return Fraction(self.problem.options.box_radius or settings.box_radius)

    def _new_report(self, command: str) -> IndexReport:
        return IndexReport(
            command=command,
            name=self.problem.name,
            variables=list(self.names),
            parity="even" if is_even(len(self.names)) else "odd",
            f=None if self.f is None else self.f.render(self.names),
            X=None if self.X is None else self.X.render(self.names),
            order=self.problem.options.order,
        )

    def _global_dims(self, report: IndexReport) -> None:
        if self.problem.options.order != "global":
            return
        order = MonomialOrder.global_(len(self.names))
        if self.f is not None:
            report.dims.global_dim_a = build_algebra(gradient(self.f), order).dimension
        if self.X is not None:
            report.dims.global_dim_b = build_algebra(list(self.X.components), order).dimension

    # ------------------------------------------------------------------
    # Sections
    # ------------------------------------------------------------------

    def _elk_section(self, report: IndexReport) -> None:
        X = self._require_field()
        B = field_algebra(X)
        J = jacobian_det(X)
        form = relative_form(B, Polynomial.constant(1, X.nvars), J, choose_functional(B, J))
        report.dims.dim_b = B.dimension
        report.indices.elk = form.signature
        report.grams.append(_gram_report("L(b b') on B", form.gram, self.show_gram))

    def _gsv_section(self, report: IndexReport) -> None:
        f, X = self._require_f(), self._require_field()
        h = cofactor(X, f)
        A, B = milnor_algebra(f), field_algebra(X)
        report.cofactor = h.render(self.names)
        report.dims.dim_a = A.dimension
        report.dims.dim_b = B.dimension
        report.dims.dim_b_mod_f = quotient_dim(B, f)
        report.dims.dim_a_mod_f = quotient_dim(A, f)
        report.dims.dim_b_mod_h = quotient_dim(B, h)
        report.dims.dim_b_rel_h = relative_multiplicity(B, h)

        terms = gsv_real_terms(f, X)
        report.signatures.sgn_b_h_j = terms.sgn_b_h_j
        report.signatures.sgn_a_h_hess = terms.sgn_a_h_hess
        report.signatures.sgn_a_hess = terms.sgn_a_hess
        report.indices.gsv_complex = gsv_complex(f, X)
        report.indices.gsv_plus, report.indices.gsv_minus = terms.values(self.variant)
        report.variant = None if terms.even else self.variant.value
        report.variants = [
            VariantValues(variant=v.value, gsv_plus=plus, gsv_minus=minus)
            for v in FormulaVariant
            for plus, minus in [terms.values(v)]
        ]
        if self.show_gram:
            J = jacobian_det(X)
            report.grams.append(
                _gram_report("L(b b' h) on B", relative_form(B, h, J).gram, True)
            )
            weight = h if terms.even else Polynomial.constant(1, f.nvars)
            label = "L(a a' h) on A" if terms.even else "L(a a') on A"
            report.grams.append(_gram_report(label, relative_form(A, weight, hessian_det(f)).gram, True))

        if not terms.even:
            self._sigma_section(report, A)
            plus, minus = report.indices.gsv_plus, report.indices.gsv_minus
            relation = "holds" if odd_complement_holds(plus, minus) else "does not hold"
            report.annotations.append(f"gsv_minus = 2 - gsv_plus {relation}")
        self._fiber_annotations(report, f)

    def _sigma_section(self, report: IndexReport, A: Optional[QuotientAlgebra] = None) -> None:
        f = self._require_f()
        A = A or milnor_algebra(f)
        chain = flag(f, A)
        forms = sigma_forms(f, A=A, chain=chain)
        sigmas = [form.inertia.signature for form in forms]
        report.dims.dim_a = A.dimension
        report.flag = FlagReport(
            depth=chain.depth,
            dims=chain.dims,
            quotient_dims=chain.quotient_dims,
            sigmas=sigmas,
            k_plus=sum(sigmas[1:]),
            k_minus=sum((-1) ** i * s for i, s in enumerate(sigmas) if i >= 1),
        )
        if self.show_gram:
            for m, form in enumerate(forms):
                report.grams.append(_gram_report(f"<,>_(f,{m}) on K_{m}", form, True))

    def _euler_section(self, report: IndexReport) -> None:
        chi_plus, chi_minus = euler_characteristics(self._require_f())
        report.euler = [chi_plus, chi_minus]

    def _fiber_annotations(self, report: IndexReport, f: Polynomial) -> None:
        box = Box.cube(f.nvars, self._radius())
        for side, label in ((1, "f > 0"), (-1, "f < 0")):
            if not fiber_side_sampled(f, side, box):
                report.annotations.append(
                    f"no point with {label} was found near the origin; that fiber is empty"
                )

    def _degree_oracle(self, report: IndexReport) -> None:
        X = self._require_field()
        verdict = local_degree(X, self._radius())
        report.oracles.append(_comparison("degree", verdict, report.indices.elk))

    def _curve_oracle(self, report: IndexReport, sides: tuple[int, ...] = (1, -1)) -> None:
        f, X = self._require_f(), self._require_field()
        if f.nvars != 2:
            report.annotations.append("curve_gsv skipped: it needs exactly two variables")
            return
        magnitude = Fraction(self.problem.options.epsilon) if self.problem.options.epsilon else None
        for side in sides:
            epsilon = None if magnitude is None else side * magnitude
            verdict = curve_gsv(f, X, side, self._radius(), epsilon)
            expected = report.indices.gsv_plus if side > 0 else report.indices.gsv_minus
            report.oracles.append(_comparison(f"curve_gsv{side:+d}", verdict, expected))

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def elk(self) -> IndexReport:
        report = self._new_report("elk")
        self._elk_section(report)
        self._global_dims(report)
        return report

    def gsv(self) -> IndexReport:
        report = self._new_report("gsv")
        self._gsv_section(report)
        self._elk_section(report)
        self._euler_section(report)
        self._global_dims(report)
        return report

    def sigma(self) -> IndexReport:
        report = self._new_report("sigma")
        self._sigma_section(report)
        self._global_dims(report)
        return report

    def algebra(self) -> IndexReport:
        """Standard basis, monomial basis and socle of B (or of A when X is absent)."""
        report = self._new_report("algebra")
        if self.X is not None:
            generators = list(self.X.components)
        else:
            generators = gradient(self._require_f())
        nvars = len(self.names)
        order = MonomialOrder.from_name(self.problem.options.order, nvars)
        algebra = build_algebra(generators, order)
        basis = algebra.standard_basis
        report.algebra = AlgebraSummary(
            generators=[g.render(self.names) for g in generators],
            order=order.kind.value,
            dimension=algebra.dimension,
            monomials=[algebra.basis_polynomial(k).render(self.names) for k in range(algebra.dimension)],
            socle=[algebra.lift(v).render(self.names) for v in socle(algebra).vectors],
            pairs_considered=basis.pairs_considered,
            pairs_reduced=basis.pairs_reduced,
        )
        if self.X is not None:
            report.dims.dim_b = algebra.dimension
        else:
            report.dims.dim_a = algebra.dimension
        return report

    def oracle_degree(self) -> IndexReport:
        report = self.elk()
        report.command = "oracle degree"
        self._degree_oracle(report)
        return report

    def oracle_curve(self, sides: tuple[int, ...] = (1, -1)) -> IndexReport:
        report = self._new_report("oracle curve-gsv")
        self._gsv_section(report)
        self._curve_oracle(report, sides)
        return report

    def full(self) -> IndexReport:
        """Every section the problem supports, plus the oracles its options request."""
        report = self._new_report("validate")
        if self.f is not None:
            if self.X is not None:
                self._gsv_section(report)
            else:
                self._sigma_section(report)
            self._euler_section(report)
        if self.X is not None:
            self._elk_section(report)
        self._global_dims(report)
        oracles = self.problem.options.oracle
        if oracles.degree:
            self._degree_oracle(report)
        if oracles.curve_gsv:
            self._curve_oracle(report)
        return report


# ============================================================================
# CORPUS VALIDATION
# ============================================================================

def _observed(report: IndexReport, key: str):
    if key in ("elk", "gsv_complex", "gsv_plus", "gsv_minus"):
        return getattr(report.indices, key)
    if key in ("dim_a", "dim_b"):
        return getattr(report.dims, key)
    if key in ("chi_plus", "chi_minus"):
        return None if report.euler is None else report.euler[0 if key == "chi_plus" else 1]
    if key == "sigma":
        return None if report.flag is None else report.flag.sigmas
    if key == "depth":
        return None if report.flag is None else report.flag.depth
    raise KeyError(key)


def compare_expectations(problem: ProblemFile, report: IndexReport) -> tuple[int, list[str]]:
    """Number of checks made and a description of every mismatch."""
    mismatches = []
    checked = 0
    for key, expected in problem.expected.items():
        observed = _observed(report, key)
        checked += 1
        if observed != expected:
            mismatches.append(f"{key}: expected {expected}, got {observed}")
    for comparison in report.oracles:
        if comparison.agrees is None:
            continue
        checked += 1
        if not comparison.agrees:
            mismatches.append(
                f"{comparison.name}: oracle gave {comparison.value}, formula gave {comparison.expected}"
            )
    return checked, mismatches


def validate_problem(path: Union[str, Path]) -> ValidationRow:
    """Run one corpus file end to end; never raises for engine errors."""
    path = Path(path)
    start = time.time()
    name = path.stem
    try:
        problem = ProblemFile.load(path)
        name = problem.name
        expected_error = problem.expected.error
        try:
            report = IndexPipeline(problem).full()
        except EngineError as exc:
            if expected_error and type(exc).__name__ == expected_error:
                return ValidationRow(
                    name=name, path=str(path), status="pass", checked=1, seconds=time.time() - start
                )
            raise
        checked, mismatches = compare_expectations(problem, report)
        if expected_error:
            checked += 1
            mismatches.append(f"error: expected {expected_error}, but the problem succeeded")
    except EngineError as exc:
        logger.info(f"{name}: {type(exc).__name__}: {exc}")
        return ValidationRow(
            name=name,
            path=str(path),
            status="error",
            error=f"{type(exc).__name__}: {exc}",
            seconds=time.time() - start,
        )
    status = "fail" if mismatches else "pass"
    logger.info(f"{name}: {status} ({checked} checks)")
    return ValidationRow(
        name=name,
        path=str(path),
        status=status,
        checked=checked,
        mismatches=mismatches,
        seconds=time.time() - start,
    )
