"""
Conservation-of-Number Harness

A small deformation of a vector field splits a degenerate zero into nearby
simple zeros without changing the total index. The harness compares the
certified degree before and after the deformation with two independent
counts on the deformed field: the numeric sum of Jacobian signs at its real
zeros, and the signature of the global trace form on its quotient algebra
(complex-conjugate pairs of zeros contribute nothing to that signature).
"""

import logging
from fractions import Fraction

import numpy as np
from sympy import Matrix

from src.core.algebra import QuotientAlgebra, build_algebra
from src.core.calculus import gradient, jacobian_det
from src.core.forms import signature
from src.core.polynomial import Polynomial, Scalar, VectorField
from src.core.sbasis import MonomialOrder
from src.oracle.degree import degree
from src.oracle.intervals import Box
from src.oracle.verdict import OracleVerdict
from src.utils.constants import METHOD_CONSERVATION

logger = logging.getLogger(__name__)

IMAGINARY_TOLERANCE = 1e-8


def tangent_generators(f: Polynomial) -> list[VectorField]:
    """Fields tangent to f = 0: f d/dx_i for every i and f_j d/dx_i - f_i d/dx_j for i < j."""
    n = f.nvars
    zero = Polynomial.zero(n)
    partials = gradient(f)
    fields = []
    for i in range(n):
        components = [zero] * n
        components[i] = f
        fields.append(VectorField(tuple(components)))
    for i in range(n):
        for j in range(i + 1, n):
            components = [zero] * n
            components[i] = partials[j]
            components[j] = -partials[i]
            fields.append(VectorField(tuple(components)))
    return fields


def _to_numpy(M: Matrix) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in M.tolist()], dtype=float)


def real_zeros(Q: QuotientAlgebra, seed: int = 0) -> list[np.ndarray]:
    """Real points of the zero set of a global quotient algebra with simple zeros.

    Evaluation at a zero is a common left eigenvector of every multiplication
    matrix; a random combination separates the zeros, and the coordinates are
    read back from the eigenvector.
    """
    if Q.dimension == 0:
        return []
    matrices = [_to_numpy(M) for M in Q.variable_matrices()]
    rng = np.random.default_rng(seed)
    weights = rng.uniform(0.5, 1.5, size=len(matrices))
    combined = sum(w * M for w, M in zip(weights, matrices))
    _, vectors = np.linalg.eig(combined.T)
    points = []
    for k in range(vectors.shape[1]):
        e = vectors[:, k]
        scale = np.vdot(e, e)
        coords = np.array([np.conj(e) @ (M.T @ e) / scale for M in matrices])
        if np.all(np.abs(coords.imag) < IMAGINARY_TOLERANCE * max(1.0, float(np.max(np.abs(coords))))):
            point = coords.real
            if not any(np.linalg.norm(point - p) < 1e-9 for p in points):
                points.append(point)
    return points


def trace_form_signature(Q: QuotientAlgebra, weight: Polynomial) -> int:
    """Signature of (a, b) -> Tr(weight * a * b) on the algebra."""
    M_w = Q.mult_matrix(weight)
    n = Q.dimension
    basis = [Q.mult_matrix(Q.basis_polynomial(k)) for k in range(n)]
    entries = [[(M_w * basis[k] * basis[l]).trace() for l in range(n)] for k in range(n)]
    return signature(Matrix(entries)).signature


def conservation_check(
    X: VectorField,
    perturbation: VectorField,
    scale: Scalar,
    box: Box,
) -> OracleVerdict:
    """Compare the degree of X with the indices of X + scale * perturbation over the box."""
    if len(perturbation) != len(X):
        raise ValueError("Perturbation and field have different component counts")
    scale = Fraction(scale)
    perturbed = X + perturbation.scale(scale)
    before = degree(X, box)
    after = degree(perturbed, box)

    Q = build_algebra(list(perturbed.components), MonomialOrder.global_(X.nvars))
    J = jacobian_det(perturbed)
    J_eval = J.to_numpy()
    zeros = real_zeros(Q)
    signs = [int(np.sign(J_eval(*point))) for point in zeros]
    inside = [s for point, s in zip(zeros, signs) if box.contains(point)]
    global_signature = trace_form_signature(Q, J)

    agrees = before.value == after.value == sum(inside) and global_signature == sum(signs)
    logger.debug(
        f"Conservation: degree {before.value} -> {after.value}, "
        f"{len(zeros)} real zeros, trace signature {global_signature}"
    )
    notes = [f"scale {scale}", f"global algebra dimension {Q.dimension}"]
    if any(s == 0 for s in signs):
        notes.append("a real zero of the deformed field is degenerate")
    return OracleVerdict(
        value=after.value,
        method=METHOD_CONSERVATION,
        certified=before.certified and after.certified,
        effort={
            "splits": before.effort.get("splits", 0) + after.effort.get("splits", 0),
            "real_zeros": len(zeros),
        },
        notes=tuple(notes),
        details={
            "degree_before": before.value,
            "degree_after": after.value,
            "local_index_sum": sum(inside),
            "local_index_sum_all": sum(signs),
            "global_signature": global_signature,
            "real_zeros": [[float(c) for c in point] for point in zeros],
            "agrees": agrees,
        },
    )
