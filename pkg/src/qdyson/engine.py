"""End-to-end pipeline: from a coefficient query to the rational function R.

For a target exponent vector delta (summing to zero), the coefficient of
prod x_i^{delta_i} in the q-Dyson product equals R(q, q^{a_1},..,q^{a_n})
times the q-multinomial coefficient.  Each evaluation point contributes one
simple rational summand (the split form); adding them over a common atom
denominator gives the combined form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InternalInconsistency
from .exactalg import RationalQZ, ZqPoly
from .latticepoints import (
    EvaluationPoint,
    best_shift,
    enumerate_evaluation_set,
)
from .qpochhammer import (
    QExpr,
    evaluate_product_at_point,
    normalize_to_rational,
    phi_prime_at_point,
)

ShiftPolicy = Union[str, tuple[int, ...]]


@dataclass(frozen=True)
class CoefficientQuery:
    """Which coefficient to compute and which grid shift to use.

    shift is "zero", "best", or an explicit integer vector; radius bounds
    the best-shift search (None for the default).
    """

    delta: tuple[int, ...]
    shift: ShiftPolicy = "best"
    radius: int | None = None

    @property
    def n(self) -> int:
        return len(self.delta)

    def __post_init__(self):
        if isinstance(self.shift, str):
            if self.shift not in ("zero", "best"):
                raise ValueError(f"unknown shift policy {self.shift!r}")
        elif len(self.shift) != len(self.delta):
            raise ValueError("shift vector has wrong length")

    def resolve_shift(self) -> tuple[int, ...]:
        if self.shift == "zero":
            return (0,) * self.n
        if self.shift == "best":
            return best_shift(self.delta, self.radius)[0]
        return tuple(self.shift)


@dataclass(frozen=True)
class SplitResult:
    """Per-point rational summands; their sum is the combined R."""

    terms: tuple[tuple[EvaluationPoint, RationalQZ], ...]
    shift_used: tuple[int, ...]
    delta: tuple[int, ...]


@dataclass(frozen=True)
class CombinedResult:
    rational: RationalQZ
    shift_used: tuple[int, ...]
    point_count: int
    delta: tuple[int, ...]


def point_rational(
    point: EvaluationPoint, grid, n: int
) -> RationalQZ:
    """The summand of the interpolation-grid sum at one evaluation point,
    divided by the q-multinomial coefficient."""
    value = evaluate_product_at_point(point.alpha)
    if value.is_zero():
        raise InternalInconsistency(
            f"enumerated point {point.pi}, m={point.m} evaluates to zero"
        )
    phi = QExpr.identity(n)
    for i in range(n):
        phi = phi * phi_prime_at_point(i, point.alpha[i], grid)
    return normalize_to_rational(value / phi, n)


def coefficient_split(query: CoefficientQuery) -> SplitResult:
    """One rational summand per evaluation point."""
    n = query.n
    if sum(query.delta) != 0:
        return SplitResult(terms=(), shift_used=(0,) * n, delta=query.delta)
    shift = query.resolve_shift()
    evalset = enumerate_evaluation_set(query.delta, shift)
    terms = tuple(
        (pt, point_rational(pt, evalset.grid, n)) for pt in evalset.points
    )
    return SplitResult(terms=terms, shift_used=shift, delta=query.delta)


def combine_sum(terms: Sequence[RationalQZ], n: int) -> RationalQZ:
    """Exact sum over the least common multiple of the atom denominators."""
    lcm: Counter = Counter()
    for t in terms:
        for atom, mult in t.denom:
            lcm[atom] = max(lcm[atom], mult)
    total = ZqPoly.zero(n)
    for t in terms:
        extra = lcm - t.denom_counter()
        total = total + t.cleared_numer(extra)
    return RationalQZ.make(1, RationalQZ.one(n).unit, total, lcm)


def coefficient_combined(query: CoefficientQuery) -> CombinedResult:
    """The single rational function R for the queried coefficient."""
    split = coefficient_split(query)
    n = query.n
    combined = combine_sum([r for _, r in split.terms], n)
    return CombinedResult(
        rational=combined,
        shift_used=split.shift_used,
        point_count=len(split.terms),
        delta=query.delta,
    )


def constant_term_identity(n: int) -> CombinedResult:
    """The constant-term case delta = 0: R must be exactly 1."""
    result = coefficient_combined(CoefficientQuery(delta=(0,) * n, shift="zero"))
    if result.rational != RationalQZ.one(n):
        raise InternalInconsistency(
            f"constant-term rational factor is {result.rational}, not 1"
        )
    return result


def equivalent(r1: RationalQZ, r2: RationalQZ) -> bool:
    """Exact algebraic equality of two factored rational functions, by
    clearing each against the other's denominator atoms."""
    if r1.n != r2.n:
        raise ValueError("rational functions over different variable counts")
    lhs = r1.cleared_numer(r2.denom_counter())
    rhs = r2.cleared_numer(r1.denom_counter())
    return lhs == rhs
