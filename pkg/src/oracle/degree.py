"""
Degree Oracle

Topological degree of a polynomial map over a box by recursive boundary
subdivision. The degree of (g_1, ..., g_k) over a k-chain equals the degree
of (g_2, ..., g_k) over the part of the chain's boundary where g_1 > 0,
so the computation descends one dimension per component. Cells are refined
by bisection until a certified sign decides them; all arithmetic is exact.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from src.config.settings import settings
from src.core.errors import BoundaryZeroError, BudgetExhaustedError
from src.core.polynomial import Polynomial, Scalar, VectorField
from src.oracle.intervals import Box, Cell, certified_sign
from src.oracle.verdict import OracleVerdict
from src.utils.constants import METHOD_PREIMAGE_COUNT, METHOD_SUBDIVISION

logger = logging.getLogger(__name__)

Chain = dict[Cell, int]


# ============================================================================
# CUBICAL CHAINS
# ============================================================================

def _free_axes(cell: Cell) -> list[int]:
    lows, highs = cell
    return [i for i, (lo, hi) in enumerate(zip(lows, highs)) if lo < hi]


def _replace(values: tuple[Fraction, ...], axis: int, value: Fraction) -> tuple[Fraction, ...]:
    return values[:axis] + (value,) + values[axis + 1:]


def _bisect(cell: Cell, axis: Optional[int] = None) -> tuple[Cell, Cell]:
    lows, highs = cell
    if axis is None:
        widths = [highs[i] - lows[i] for i in range(len(lows))]
        axis = widths.index(max(widths))
    middle = (lows[axis] + highs[axis]) / 2
    return (lows, _replace(highs, axis, middle)), (_replace(lows, axis, middle), highs)


def _overlap(a: Cell, b: Cell, axes: list[int]) -> bool:
    return all(max(a[0][i], b[0][i]) < min(a[1][i], b[1][i]) for i in axes)


def _normalize(chain: Chain) -> Chain:
    """Drop zero coefficients and split overlapping cells until equal pieces cancel.

    Cells come from midpoint bisection of a common box, so on every axis two
    overlapping cells are nested and splitting the wider one makes progress.
    """
    cells = {cell: coeff for cell, coeff in chain.items() if coeff}
    groups: dict[tuple, list[Cell]] = defaultdict(list)
    for cell in cells:
        axes = _free_axes(cell)
        fixed = tuple((i, cell[0][i]) for i in range(len(cell[0])) if i not in axes)
        groups[(tuple(axes), fixed)].append(cell)

    for (axes, _), members in groups.items():
        axes = list(axes)
        pending = list(members)
        while True:
            live = [c for c in dict.fromkeys(pending) if cells.get(c)]
            clash = next(
                ((a, b) for a, b in combinations(live, 2) if _overlap(a, b, axes)), None
            )
            if clash is None:
                break
            a, b = clash
            axis = next(
                i for i in axes if (a[1][i] - a[0][i]) != (b[1][i] - b[0][i])
            )
            wider = a if (a[1][axis] - a[0][axis]) > (b[1][axis] - b[0][axis]) else b
            coeff = cells.pop(wider)
            pending = [c for c in live if c != wider]
            for half in _bisect(wider, axis):
                value = cells.get(half, 0) + coeff
                if value:
                    cells[half] = value
                else:
                    cells.pop(half, None)
                pending.append(half)
    return cells


def _boundary(chain: Chain) -> Chain:
    """Cubical boundary: sum over free axes of (-1)^position (upper face - lower face)."""
    result: Chain = defaultdict(int)
    for (lows, highs), coeff in chain.items():
        for position, axis in enumerate(_free_axes((lows, highs))):
            sign = coeff if position % 2 == 0 else -coeff
            result[(_replace(lows, axis, highs[axis]), highs)] += sign
            result[(lows, _replace(highs, axis, lows[axis]))] -= sign
    return _normalize(result)


# ============================================================================
# SUBDIVISION SEARCH
# ============================================================================

class _DegreeSearch:
    def __init__(self, components: list[Polynomial], budget: int):
        self.components = components
        self.budget = budget
        self.splits = 0
        self.cells = 0

    def run(self, box: Box) -> int:
        return self._degree(0, {box.cell: 1})

    def _vanishes_everywhere_at(self, point: list[Fraction], components: list[Polynomial]) -> bool:
        return all(c.evaluate(point) == 0 for c in components)

    def _degree(self, level: int, chain: Chain) -> int:
        if level == len(self.components):
            return sum(chain.values())
        first = self.components[level]
        rest = self.components[level + 1:]
        selected: Chain = defaultdict(int)
        work = sorted(_boundary(chain).items(), reverse=True)
        while work:
            cell, coeff = work.pop()
            self.cells += 1
            sign = certified_sign(first, *cell)
            if sign > 0:
                selected[cell] += coeff
                continue
            if sign < 0:
                continue
            if any(certified_sign(g, *cell) != 0 for g in rest):
                continue
            center = [(lo + hi) / 2 for lo, hi in zip(*cell)]
            if not _free_axes(cell) or self._vanishes_everywhere_at(center, [first, *rest]):
                raise BoundaryZeroError(
                    f"Map vanishes on the boundary near {[str(c) for c in center]}"
                )
            self.splits += 1
            if self.splits > self.budget:
                raise BudgetExhaustedError(f"Subdivision budget of {self.budget} cells exhausted")
            halves = _bisect(cell)
            work.append((halves[1], coeff))
            work.append((halves[0], coeff))
        return self._degree(level + 1, _normalize(selected))


# ============================================================================
# UNCERTIFIED FALLBACK
# ============================================================================

def preimage_count(X: VectorField, box: Box, grid: Optional[int] = None, seed: int = 0) -> int:
    """Signed count of preimages of a small random regular value inside the box.

    Newton's method runs from a regular grid of start points; distinct converged
    points are counted with the sign of the Jacobian determinant.
    """
    grid = grid or settings.fallback_grid
    n = len(X)
    funcs = [c.to_numpy() for c in X]
    jac = [[c.diff(j).to_numpy() for j in range(n)] for c in X]
    lows = np.array([float(v) for v in box.lows])
    highs = np.array([float(v) for v in box.highs])
    size = float(np.max(highs - lows))
    rng = np.random.default_rng(seed)
    target = rng.normal(size=n) * 1e-6

    axes = [np.linspace(lo, hi, grid + 2)[1:-1] for lo, hi in zip(lows, highs)]
    starts = np.array(np.meshgrid(*axes, indexing="ij")).reshape(n, -1).T
    found: list[np.ndarray] = []
    total = 0
    for x in starts:
        for _ in range(60):
            residual = np.array([fn(*x) for fn in funcs], dtype=float) - target
            matrix = np.array([[fn(*x) for fn in row] for row in jac], dtype=float)
            if np.linalg.norm(residual) < 1e-12 * max(1.0, size):
                break
            try:
                x = x - np.linalg.solve(matrix, residual)
            except np.linalg.LinAlgError:
                break
        else:
            continue
        if not np.all((x >= lows) & (x <= highs)):
            continue
        if any(np.linalg.norm(x - y) < 1e-7 * max(1.0, size) for y in found):
            continue
        found.append(x)
        det = np.linalg.det(np.array([[fn(*x) for fn in row] for row in jac], dtype=float))
        total += int(np.sign(det))
    logger.debug(f"Preimage count found {len(found)} points with signed total {total}")
    return total


# ============================================================================
# PUBLIC OPERATIONS
# ============================================================================

def degree(X: VectorField, box: Box, budget: Optional[int] = None) -> OracleVerdict:
    """Topological degree of X over the box.

    Raises:
        BoundaryZeroError: X vanishes at a point of the box boundary
    """
    if len(X) != X.nvars or box.nvars != X.nvars:
        raise ValueError("degree needs a square system matching the box dimension")
    budget = settings.degree_cell_budget if budget is None else budget
    search = _DegreeSearch(list(X.components), budget)
    try:
        value = search.run(box)
    except BudgetExhaustedError:
        logger.warning("Degree subdivision budget exhausted; falling back to an uncertified preimage count")
        return OracleVerdict(
            value=preimage_count(X, box),
            method=METHOD_PREIMAGE_COUNT,
            certified=False,
            effort={"splits": search.splits, "cells": search.cells},
            notes=("subdivision budget exhausted",),
        )
    return OracleVerdict(
        value=value,
        method=METHOD_SUBDIVISION,
        certified=True,
        effort={"splits": search.splits, "cells": search.cells},
    )


def local_degree(
    X: VectorField,
    radius: Optional[Scalar] = None,
    shrink_limit: Optional[int] = None,
    budget: Optional[int] = None,
) -> OracleVerdict:
    """Degree over a cube around the origin, halving the radius while the boundary meets a zero."""
    radius = Fraction(radius if radius is not None else Fraction(settings.box_radius))
    shrink_limit = settings.box_shrink_limit if shrink_limit is None else shrink_limit
    for attempt in range(shrink_limit + 1):
        try:
            verdict = degree(X, Box.cube(X.nvars, radius), budget)
        except BoundaryZeroError:
            logger.debug(f"Boundary zero at radius {radius}; halving")
            radius /= 2
            continue
        return verdict.with_notes(f"box half-width {radius}")
    raise BoundaryZeroError(f"Boundary still meets a zero after {shrink_limit} halvings")
