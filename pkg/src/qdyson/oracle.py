"""Independent verification of the symbolic engine.

The oracle never touches the symbolic pipeline: it expands the q-Dyson
product as an explicit Laurent polynomial, reads coefficients off directly,
and compares them (as exact rational functions of q) with the specialized
engine output.  A separate exact-rational grid-sum oracle realizes the
coefficient formula of the combinatorial Nullstellensatz for plain
polynomials over the rationals.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .engine import CoefficientQuery, ShiftPolicy, coefficient_combined
from .errors import DuplicateNode, QDysonError
from .exactalg import (
    LaurentPoly,
    QPoly,
    RationalQZ,
    equal_as_rational,
    substitute_z,
)
from .qpochhammer import q_multinomial_numeric


def expand_qdyson_product(a: Sequence[int]) -> LaurentPoly:
    """Exact Laurent expansion of prod_{i<j} (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j}."""
    n = len(a)
    if n < 1:
        raise ValueError("need at least one variable")
    if any(x < 0 for x in a):
        raise ValueError("the a_i must be nonnegative")
    out = LaurentPoly.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            up = [0] * n
            up[i], up[j] = 1, -1
            down = [-x for x in up]
            for t in range(a[i]):
                out = out * LaurentPoly(
                    n, [((0,) * n, 1), (tuple(up), QPoly.monomial(t, -1))]
                )
            for t in range(1, a[j] + 1):
                out = out * LaurentPoly(
                    n, [((0,) * n, 1), (tuple(down), QPoly.monomial(t, -1))]
                )
    return out


def dyson_coefficient(
    a: Sequence[int],
    delta: Sequence[int],
    expansion: LaurentPoly | None = None,
) -> QPoly:
    """Coefficient of prod x_i^{delta_i}, by direct expansion."""
    if len(a) != len(delta):
        raise ValueError("a and delta have different lengths")
    if expansion is None:
        expansion = expand_qdyson_product(a)
    return expansion.coefficient(delta)


@dataclass(frozen=True)
class VerificationReport:
    delta: tuple[int, ...]
    a: tuple[int, ...]
    shift: ShiftPolicy
    match: bool
    engine_numer: QPoly
    engine_denom: QPoly
    oracle_coeff: QPoly
    seconds: float
    error: str = ""


def _engine_value(
    rational: RationalQZ, a: Sequence[int]
) -> tuple[QPoly, QPoly]:
    """Specialized engine coefficient (numerator, denominator) including the
    q-multinomial factor."""
    num, den = substitute_z(rational, a)
    return num * q_multinomial_numeric(a), den


def verify_query(
    delta: Sequence[int],
    a: Sequence[int],
    shift: ShiftPolicy = "best",
    expansion: LaurentPoly | None = None,
    rational: RationalQZ | None = None,
) -> VerificationReport:
    """Compare engine and oracle for one (delta, a) pair."""
    delta = tuple(delta)
    a = tuple(a)
    if any(x < 1 for x in a):
        raise ValueError("the symbolic engine requires all a_i >= 1")
    start = time.perf_counter()
    oracle = dyson_coefficient(a, delta, expansion)
    try:
        if rational is None:
            rational = coefficient_combined(
                CoefficientQuery(delta=delta, shift=shift)
            ).rational
        num, den = _engine_value(rational, a)
        match = equal_as_rational((num, den), (oracle, QPoly.one()))
        error = ""
    except QDysonError as exc:
        num, den = QPoly(), QPoly.one()
        match = False
        error = f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        delta=delta,
        a=a,
        shift=shift,
        match=match,
        engine_numer=num,
        engine_denom=den,
        oracle_coeff=oracle,
        seconds=time.perf_counter() - start,
        error=error,
    )


def grid_coefficient_oracle(
    poly: Mapping[tuple[int, ...], Fraction | int],
    degrees: Sequence[int],
    grids: Sequence[Sequence[Fraction | int]],
) -> Fraction:
    """Top-coefficient extraction by the exact grid sum.

    ``poly`` maps exponent vectors (nonnegative) to rational coefficients;
    the value returned is the coefficient of prod x_i^{degrees[i]}, computed
    as sum_{c in grid} F(c) / prod phi_i'(c_i) with phi_i the node polynomial
    of grid i.  Requires deg F <= sum(degrees) and |grids[i]| = degrees[i]+1.
    """
    n = len(degrees)
    grids = [tuple(Fraction(x) for x in g) for g in grids]
    for d, g in zip(degrees, grids):
        if len(set(g)) != len(g):
            raise DuplicateNode(f"grid {g} has repeated nodes")
        if len(g) != d + 1:
            raise ValueError("grid size must be degree + 1")
    if any(len(e) != n for e in poly):
        raise ValueError("exponent vector length mismatch")
    if poly and max(sum(e) for e in poly) > sum(degrees):
        raise ValueError("polynomial degree exceeds the grid bound")

    phi_prime = [
        {
            c: _prod(c - other for other in g if other != c)
            for c in g
        }
        for g in grids
    ]
    total = Fraction(0)
    for node in product(*grids):
        value = Fraction(0)
        for exps, coeff in poly.items():
            term = Fraction(coeff)
            for x, e in zip(node, exps):
                term *= x ** e
            value += term
        if value:
            denom = Fraction(1)
            for i, c in enumerate(node):
                denom *= phi_prime[i][c]
            total += value / denom
    return total


def _prod(values: Iterable[Fraction]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


@dataclass(frozen=True)
class SweepConfig:
    """Bounds for an exhaustive engine-vs-oracle sweep (desk scale)."""

    n_range: tuple[int, ...] = (2, 3)
    a_max: int = 2
    delta_budget: int = 2
    shift_policies: tuple[ShiftPolicy, ...] = ("zero", "best")
    jobs: int = 1
    include_unbalanced: bool = False

    def __post_init__(self):
        if max(self.n_range) > 4 or self.a_max > 3:
            raise ValueError("sweep bounds exceed desk scale (n <= 4, a <= 3)")


def zero_sum_deltas(n: int, budget: int) -> list[tuple[int, ...]]:
    """All integer vectors with sum 0 and sum of |entries| <= budget."""
    out = [
        d
        for d in product(range(-budget, budget + 1), repeat=n)
        if sum(d) == 0 and sum(abs(x) for x in d) <= budget
    ]
    return sorted(out)


def _sweep_chunk(args) -> list[VerificationReport]:
    n, a, items = args
    expansion = expand_qdyson_product(a)
    return [
        verify_query(delta, a, shift=policy, expansion=expansion, rational=rational)
        for delta, policy, rational in items
    ]


def sweep(config: SweepConfig) -> list[VerificationReport]:
    """Deterministic engine-vs-oracle comparison over the configured range;
    mismatches and engine errors are reported as data, never raised."""
    reports: list[VerificationReport] = []
    for n in sorted(config.n_range):
        if config.include_unbalanced:
            deltas = sorted(
                d
                for d in product(
                    range(-config.delta_budget, config.delta_budget + 1), repeat=n
                )
                if sum(abs(x) for x in d) <= config.delta_budget
            )
        else:
            deltas = zero_sum_deltas(n, config.delta_budget)
        items = []
        for delta in deltas:
            for policy in config.shift_policies:
                if sum(delta) == 0:
                    rational = coefficient_combined(
                        CoefficientQuery(delta=delta, shift=policy)
                    ).rational
                else:
                    rational = RationalQZ.zero(n)
                items.append((delta, policy, rational))
        avecs = sorted(product(range(1, config.a_max + 1), repeat=n))
        chunks = [(n, a, items) for a in avecs]
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                for part in pool.map(_sweep_chunk, chunks):
                    reports.extend(part)
        else:
            for chunk in chunks:
                reports.extend(_sweep_chunk(chunk))
    reports.sort(key=lambda r: (len(r.a), r.delta, r.a, str(r.shift)))
    return reports


def default_jobs() -> int:
    env = os.environ.get("QDYSON_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1
