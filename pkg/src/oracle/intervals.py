"""
Interval Signs

Boxes with exact rational endpoints and certified sign evaluation of
polynomials over closed cells by the centered (Taylor) form.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from src.core.polynomial import Polynomial, Scalar

Cell = tuple[tuple[Fraction, ...], tuple[Fraction, ...]]


@dataclass(frozen=True)
class Box:
    """Product of closed rational intervals [lows[i], highs[i]]."""

    lows: tuple[Fraction, ...]
    highs: tuple[Fraction, ...]

    def __post_init__(self):
        lows = tuple(Fraction(x) for x in self.lows)
        highs = tuple(Fraction(x) for x in self.highs)
        object.__setattr__(self, "lows", lows)
        object.__setattr__(self, "highs", highs)
        if not lows or len(lows) != len(highs):
            raise ValueError("Box needs matching, non-empty bound vectors")
        if any(lo >= hi for lo, hi in zip(lows, highs)):
            raise ValueError("Box intervals must be nondegenerate")

    @classmethod
    def cube(cls, nvars: int, radius: Scalar, center: Optional[Sequence[Scalar]] = None) -> "Box":
        radius = Fraction(radius)
        center = [Fraction(c) for c in center] if center else [Fraction(0)] * nvars
        return cls(tuple(c - radius for c in center), tuple(c + radius for c in center))

    @property
    def nvars(self) -> int:
        return len(self.lows)

    @property
    def cell(self) -> Cell:
        return (self.lows, self.highs)

    def contains(self, point: Sequence[float]) -> bool:
        return all(float(lo) <= x <= float(hi) for lo, hi, x in zip(self.lows, self.highs, point))

    def split(self, axis: int) -> tuple["Box", "Box"]:
        middle = (self.lows[axis] + self.highs[axis]) / 2
        left_highs = self.highs[:axis] + (middle,) + self.highs[axis + 1:]
        right_lows = self.lows[:axis] + (middle,) + self.lows[axis + 1:]
        return Box(self.lows, left_highs), Box(right_lows, self.highs)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def certified_sign(p: Polynomial, lows: Sequence[Fraction], highs: Sequence[Fraction]) -> int:
    """Sign of p on the closed cell when it is constant and provable, else 0.

    Degenerate axes (lows[i] == highs[i]) are allowed; a point cell is evaluated exactly.
    """
    center = [(lo + hi) / 2 for lo, hi in zip(lows, highs)]
    radii = [(hi - lo) / 2 for lo, hi in zip(lows, highs)]
    if not any(radii):
        return _sign(p.evaluate(center))
    shifted = p.taylor_shift(center)
    value = shifted.constant_term
    bound = Fraction(0)
    for mon, coeff in shifted.items():
        if not any(mon):
            continue
        term = abs(coeff)
        for r, e in zip(radii, mon):
            if e:
                term *= r ** e
        bound += term
    if value > bound:
        return 1
    if value < -bound:
        return -1
    return 0


def fiber_side_sampled(f: Polynomial, side: int, box: Box, depth: int = 8) -> bool:
    """True when some point of the box has sign(f) == side.

    Cells certified to have the opposite sign are pruned; the search bisects up
    to the given depth, so False means no witness was found.
    """
    stack: list[tuple[Cell, int]] = [(box.cell, 0)]
    while stack:
        (lows, highs), level = stack.pop()
        center = [(lo + hi) / 2 for lo, hi in zip(lows, highs)]
        if _sign(f.evaluate(center)) == side:
            return True
        sign = certified_sign(f, lows, highs)
        if sign == side:
            return True
        if sign == -side or level >= depth:
            continue
        widths = [hi - lo for lo, hi in zip(lows, highs)]
        axis = widths.index(max(widths))
        left, right = Box(lows, highs).split(axis)
        stack.append((left.cell, level + 1))
        stack.append((right.cell, level + 1))
    return False
