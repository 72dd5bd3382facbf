"""
Standard Bases

Buchberger completion for the global degree reverse lexicographic order and
Mora's tangent-cone completion for the local negative degree reverse
lexicographic order, sharing one pair loop. Produces the finite staircase of
standard monomials that spans a zero-dimensional quotient.
"""

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from src.config.settings import settings
from src.core.errors import BudgetExceededError, InfiniteDimensionalError, UnitIdealError
from src.core.polynomial import (
    Monomial,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

logger = logging.getLogger(__name__)


# ============================================================================
# MONOMIAL ORDERS
# ============================================================================

class OrderKind(str, Enum):
    GLOBAL = "global-degrevlex"
    LOCAL = "local-negdegrevlex"


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order; `key` is increasing in the order (larger key = larger monomial)."""

    kind: OrderKind
    nvars: int

    @classmethod
    def local(cls, nvars: int) -> "MonomialOrder":
        return cls(OrderKind.LOCAL, nvars)

    @classmethod
    def global_(cls, nvars: int) -> "MonomialOrder":
        return cls(OrderKind.GLOBAL, nvars)

    @classmethod
    def from_name(cls, name: str, nvars: int) -> "MonomialOrder":
        if name in ("local", OrderKind.LOCAL.value):
            return cls.local(nvars)
        if name in ("global", OrderKind.GLOBAL.value):
            return cls.global_(nvars)
        raise ValueError(f"Unknown monomial order '{name}'")

    @property
    def is_local(self) -> bool:
        return self.kind is OrderKind.LOCAL

    def key(self, m: Monomial) -> tuple:
        tail = tuple(-e for e in reversed(m))
        degree = sum(m)
        return (-degree, tail) if self.is_local else (degree, tail)

    def leading_term(self, p: Polynomial) -> tuple[Monomial, Fraction]:
        return p.leading_term(self.key)

    def leading_monomial(self, p: Polynomial) -> Monomial:
        return p.leading_term(self.key)[0]


def ecart(p: Polynomial, order: MonomialOrder) -> int:
    """Degree of p minus the degree of its leading monomial."""
    return p.degree - sum(order.leading_monomial(p))


def _monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    _, coeff = order.leading_term(p)
    return p if coeff == 1 else p.scale(1 / coeff)


# ============================================================================
# STANDARD BASIS
# ============================================================================

@dataclass(frozen=True)
class StandardBasis:
    """Completed, interreduced basis together with its leading monomials."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    leading_monomials: tuple[Monomial, ...]
    pairs_considered: int = 0
    pairs_reduced: int = 0
    truncation_degree: Optional[int] = field(default=None, compare=False)

    @property
    def nvars(self) -> int:
        return self.order.nvars

    @property
    def is_unit_ideal(self) -> bool:
        return any(not any(m) for m in self.leading_monomials)


def _reduce_step(h: Polynomial, lead: Monomial, coeff: Fraction, g: Polynomial, order: MonomialOrder) -> Polynomial:
    g_lead, g_coeff = order.leading_term(g)
    return h - g.mul_term(mono_div(lead, g_lead), coeff / g_coeff)


def weak_normal_form(p: Polynomial, generators: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Mora normal form: zero exactly when p lies in the ideal (localized for local orders).

    For global orders this is ordinary top reduction. For local orders the
    divisor of minimal ecart is chosen, oldest first, and intermediate
    remainders join the reducer set when their ecart is smaller.
    """
    h = p
    if not order.is_local:
        while not h.is_zero:
            lead, coeff = order.leading_term(h)
            g = next((g for g in generators if mono_divides(order.leading_monomial(g), lead)), None)
            if g is None:
                return h
            h = _reduce_step(h, lead, coeff, g, order)
        return h

    reducers = [(g, ecart(g, order)) for g in generators]
    while not h.is_zero:
        lead, coeff = order.leading_term(h)
        best = None
        for g, g_ecart in reducers:
            if mono_divides(order.leading_monomial(g), lead) and (best is None or g_ecart < best[1]):
                best = (g, g_ecart)
        if best is None:
            return h
        g, g_ecart = best
        h_ecart = ecart(h, order)
        if g_ecart > h_ecart:
            reducers.append((h, h_ecart))
        h = _reduce_step(h, lead, coeff, g, order)
    return h


def _full_reduce_global(p: Polynomial, generators: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    result: dict[Monomial, Fraction] = {}
    h = p
    while not h.is_zero:
        lead, coeff = order.leading_term(h)
        g = next((g for g in generators if mono_divides(order.leading_monomial(g), lead)), None)
        if g is None:
            result[lead] = coeff
            h = h - Polynomial.monomial(lead, coeff)
        else:
            h = _reduce_step(h, lead, coeff, g, order)
    return Polynomial(p.nvars, result)


def _s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    f_lead, f_coeff = order.leading_term(f)
    g_lead, g_coeff = order.leading_term(g)
    lcm = mono_lcm(f_lead, g_lead)
    return f.mul_term(mono_div(lcm, f_lead), 1 / f_coeff) - g.mul_term(mono_div(lcm, g_lead), 1 / g_coeff)


def standard_basis(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    budget: Optional[int] = None,
) -> StandardBasis:
    """Complete gens to a standard basis (Gröbner basis for global orders).

    Args:
        gens: Generators, all in the same variable set
        order: Local or global monomial order
        budget: Maximum number of pair reductions (defaults to settings.pair_budget)

    Returns:
        Interreduced StandardBasis with its leading monomials

    Raises:
        BudgetExceededError: completion needed more pair reductions than allowed
    """
    if not gens:
        raise ValueError("standard_basis needs at least one generator")
    if any(g.nvars != order.nvars for g in gens):
        raise ValueError("Generators and order use different variable counts")
    budget = settings.pair_budget if budget is None else budget

    basis: list[Polynomial] = []
    for g in gens:
        if not g.is_zero:
            basis.append(_monic(g, order))
    if not basis:
        return StandardBasis((), order, ())

    leads = [order.leading_monomial(g) for g in basis]
    queue: list[tuple[int, int, int]] = []
    pending: set[tuple[int, int]] = set()

    def push_pairs(new_index: int) -> None:
        for i in range(new_index):
            lcm = mono_lcm(leads[i], leads[new_index])
            heapq.heappush(queue, (sum(lcm), i, new_index))
            pending.add((i, new_index))

    for j in range(len(basis)):
        push_pairs(j)

    considered = reduced = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        considered += 1
        lcm = mono_lcm(leads[i], leads[j])
        if mono_mul(leads[i], leads[j]) == lcm:
            continue
        if any(
            k not in (i, j)
            and mono_divides(leads[k], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        reduced += 1
        if reduced > budget:
            raise BudgetExceededError(f"Standard basis exceeded the budget of {budget} pair reductions")
        h = weak_normal_form(_s_polynomial(basis[i], basis[j], order), basis, order)
        if h.is_zero:
            continue
        basis.append(_monic(h, order))
        leads.append(order.leading_monomial(basis[-1]))
        push_pairs(len(basis) - 1)

    keep = []
    for i, lead in enumerate(leads):
        redundant = any(
            k != i and mono_divides(leads[k], lead) and (leads[k] != lead or k < i)
            for k in range(len(leads))
        )
        if not redundant:
            keep.append(i)
    generators = [basis[i] for i in keep]
    if not order.is_local:
        generators = [
            _monic(_full_reduce_global(g, generators[:n] + generators[n + 1:], order), order)
            if len(generators) > 1 else g
            for n, g in enumerate(generators)
        ]
    logger.debug(
        f"Standard basis ({order.kind.value}): {len(generators)} generators, "
        f"{considered} pairs considered, {reduced} reduced"
    )
    result = StandardBasis(
        tuple(generators),
        order,
        tuple(order.leading_monomial(g) for g in generators),
        considered,
        reduced,
    )
    try:
        staircase = standard_monomials(result)
    except (InfiniteDimensionalError, UnitIdealError):
        return result
    degree = max(sum(m) for m in staircase) + 1
    return StandardBasis(
        result.generators, order, result.leading_monomials, considered, reduced, degree
    )


# ============================================================================
# STAIRCASE AND NORMAL FORMS
# ============================================================================

def standard_monomials(basis: StandardBasis) -> list[Monomial]:
    """Monomials not divisible by any leading monomial, in graded order.

    Raises:
        UnitIdealError: the ideal contains a unit, the quotient is zero
        InfiniteDimensionalError: some variable has no pure power among the leading monomials
    """
    n = basis.nvars
    leads = basis.leading_monomials
    if basis.is_unit_ideal:
        raise UnitIdealError("Generators do not vanish at the origin; the quotient is zero")
    for i in range(n):
        if not any(lead[i] > 0 and sum(lead) == lead[i] for lead in leads):
            raise InfiniteDimensionalError(
                f"Staircase is open in variable {i}; the quotient is infinite dimensional"
            )

    def standard(m: Monomial) -> bool:
        return not any(mono_divides(lead, m) for lead in leads)

    start = (0,) * n
    seen = {start}
    frontier = deque([start])
    while frontier:
        m = frontier.popleft()
        for i in range(n):
            step = m[:i] + (m[i] + 1,) + m[i + 1:]
            if step not in seen and standard(step):
                seen.add(step)
                frontier.append(step)
    return sorted(seen, key=lambda m: (sum(m), tuple(-e for e in m)))


def normal_form(p: Polynomial, basis: StandardBasis) -> Polynomial:
    """Canonical remainder of p supported on standard monomials.

    For local orders the Mora weak normal form decides membership; a nonzero
    class is then fully reduced in the truncated ring modulo m^D, where D
    exceeds the degree of every standard monomial so that m^D lies in the ideal.
    """
    order = basis.order
    if p.nvars != basis.nvars:
        raise ValueError("Polynomial and basis use different variable counts")
    if p.is_zero or not basis.generators:
        return p
    if not order.is_local:
        return _full_reduce_global(p, basis.generators, order)
    if weak_normal_form(p, basis.generators, order).is_zero:
        return Polynomial.zero(p.nvars)
    bound = basis.truncation_degree
    if bound is None:
        logger.debug("Quotient is not finite dimensional; returning the weak normal form")
        return weak_normal_form(p, basis.generators, order)

    result: dict[Monomial, Fraction] = {}
    h = p.truncate(bound)
    while not h.is_zero:
        lead, coeff = order.leading_term(h)
        best = None
        for g in basis.generators:
            if mono_divides(order.leading_monomial(g), lead):
                g_ecart = ecart(g, order)
                if best is None or g_ecart < best[1]:
                    best = (g, g_ecart)
        if best is None:
            result[lead] = coeff
            h = h - Polynomial.monomial(lead, coeff)
        else:
            h = _reduce_step(h, lead, coeff, best[0], order).truncate(bound)
    return Polynomial(p.nvars, result)
