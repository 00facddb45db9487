"""Brute-force expansion oracle, grid-sum oracle, and engine verification."""

import random
from fractions import Fraction
from itertools import product

import pytest

from qdyson.errors import DuplicateNode
from qdyson.exactalg import LaurentPoly, QPoly, RationalQZ, equal_as_rational
from qdyson.oracle import (
    SweepConfig,
    dyson_coefficient,
    expand_qdyson_product,
    grid_coefficient_oracle,
    sweep,
    verify_query,
    zero_sum_deltas,
)
from qdyson.qpochhammer import q_multinomial_numeric


class TestExpansion:
    def test_single_variable(self):
        assert expand_qdyson_product((5,)) == LaurentPoly.one(1)

    def test_a_one_zero(self):
        # (x1/x2)_1 = 1 - x1/x2
        out = expand_qdyson_product((1, 0))
        expected = LaurentPoly(2, [((0, 0), 1), ((1, -1), -1)])
        assert out == expected

    def test_a_one_one(self):
        # (1 - x1/x2)(1 - q x2/x1) = 1 + q - q x2/x1 - x1/x2
        out = expand_qdyson_product((1, 1))
        expected = LaurentPoly(
            2,
            [
                ((0, 0), QPoly({0: 1, 1: 1})),
                ((-1, 1), QPoly.monomial(1, -1)),
                ((1, -1), QPoly({0: -1})),
            ],
        )
        assert out == expected

    def test_constant_term_is_multinomial(self):
        # the q-Dyson constant-term identity, at small numeric a
        for n in (2, 3):
            for a in product((1, 2), repeat=n):
                expansion = expand_qdyson_product(a)
                assert expansion.coefficient((0,) * n) == q_multinomial_numeric(a)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            expand_qdyson_product(())
        with pytest.raises(ValueError):
            expand_qdyson_product((1, -1))


class TestDysonCoefficient:
    def test_examples(self):
        assert dyson_coefficient((1, 1), (1, -1)) == QPoly({0: -1})
        assert dyson_coefficient((1, 1), (1, 1)).is_zero()
        assert dyson_coefficient((1, 1, 1), (1, 0, -1)) == QPoly({1: -1, 2: -1})

    def test_reuses_expansion(self):
        a = (2, 1)
        expansion = expand_qdyson_product(a)
        assert dyson_coefficient(a, (1, -1), expansion) == dyson_coefficient(
            a, (1, -1)
        )

    def test_length_check(self):
        with pytest.raises(ValueError):
            dyson_coefficient((1, 1), (1, -1, 0))


class TestVerify:
    def test_matching_cases(self):
        for delta, a in (
            ((1, -1), (1, 1)),
            ((1, -1), (2, 3)),
            ((1, 0, -1), (1, 1, 1)),
            ((2, -2), (2, 2)),
        ):
            report = verify_query(delta, a)
            assert report.match, (delta, a, report.error)
            assert report.error == ""

    def test_worked_value(self):
        report = verify_query((1, -1), (1, 1))
        assert report.oracle_coeff == QPoly({0: -1})
        assert equal_as_rational(
            (report.engine_numer, report.engine_denom), (QPoly({0: -1}), QPoly.one())
        )

    def test_unbalanced_delta(self):
        report = verify_query((1, 1), (1, 1))
        assert report.match
        assert report.oracle_coeff.is_zero()

    def test_precomputed_rational_mismatch_reported(self):
        report = verify_query((1, -1), (1, 1), rational=RationalQZ.one(2))
        assert not report.match

    def test_requires_positive_a(self):
        with pytest.raises(ValueError):
            verify_query((1, -1), (1, 0))


class TestGridOracle:
    def test_univariate_quadratic(self):
        # leading coefficient of x^2 on any 3-node grid is 1
        poly = {(2,): 1, (1,): -3, (0,): 7}
        assert grid_coefficient_oracle(poly, (2,), [(0, 1, 2)]) == 1
        assert grid_coefficient_oracle(poly, (2,), [(-1, Fraction(1, 2), 5)]) == 1

    def test_degree_deficient_is_zero(self):
        assert grid_coefficient_oracle({(1,): 1}, (2,), [(0, 1, 2)]) == 0

    def test_bivariate(self):
        # coefficient of x y in x y + x + y + 1
        poly = {(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}
        assert grid_coefficient_oracle(poly, (1, 1), [(0, 1), (0, 1)]) == 1

    def test_duplicate_node(self):
        with pytest.raises(DuplicateNode):
            grid_coefficient_oracle({(0,): 1}, (1,), [(1, 1)])

    def test_grid_size_check(self):
        with pytest.raises(ValueError):
            grid_coefficient_oracle({(0,): 1}, (2,), [(0, 1)])

    def test_degree_bound_check(self):
        with pytest.raises(ValueError):
            grid_coefficient_oracle({(3,): 1}, (2,), [(0, 1, 2)])

    def test_randomized_against_construction(self):
        # build a random polynomial with known top coefficient and recover it
        rng = random.Random(42)
        for _ in range(25):
            n = rng.choice((1, 2))
            degrees = tuple(rng.randint(0, 3) for _ in range(n))
            top = rng.randint(-5, 5)
            poly = {degrees: Fraction(top)}
            for _ in range(rng.randint(0, 4)):
                exps = tuple(rng.randint(0, d) for d in degrees)
                if sum(exps) < sum(degrees):
                    poly[exps] = poly.get(exps, Fraction(0)) + Fraction(
                        rng.randint(-9, 9), rng.randint(1, 4)
                    )
            grids = [
                tuple(rng.sample(range(-6, 7), d + 1)) for d in degrees
            ]
            assert grid_coefficient_oracle(poly, degrees, grids) == top

    def test_grid_independence(self):
        poly = {(2, 1): Fraction(3, 2), (0, 0): 5, (1, 1): -2}
        v1 = grid_coefficient_oracle(poly, (2, 1), [(0, 1, 2), (0, 1)])
        v2 = grid_coefficient_oracle(
            poly, (2, 1), [(-3, Fraction(1, 3), 4), (7, -2)]
        )
        assert v1 == v2 == Fraction(3, 2)


class TestSweep:
    def test_zero_sum_deltas(self):
        assert zero_sum_deltas(2, 2) == [(-1, 1), (0, 0), (1, -1)]
        assert len(zero_sum_deltas(3, 2)) == 7

    def test_desk_scale_guard(self):
        with pytest.raises(ValueError):
            SweepConfig(n_range=(5,))
        with pytest.raises(ValueError):
            SweepConfig(a_max=4)

    def test_small_sweep_all_match(self):
        reports = sweep(SweepConfig(n_range=(2,), a_max=2, delta_budget=2))
        assert reports
        assert all(r.match for r in reports)
        # 3 deltas x 2 policies x 4 a-vectors
        assert len(reports) == 24

    def test_deterministic_order(self):
        config = SweepConfig(n_range=(2,), a_max=1, delta_budget=2)
        r1 = [((r.delta, r.a, r.shift)) for r in sweep(config)]
        r2 = [((r.delta, r.a, r.shift)) for r in sweep(config)]
        assert r1 == r2

    def test_parallel_matches_serial(self):
        serial = sweep(SweepConfig(n_range=(2,), a_max=2, delta_budget=2, jobs=1))
        parallel = sweep(SweepConfig(n_range=(2,), a_max=2, delta_budget=2, jobs=2))
        assert [(r.delta, r.a, r.match) for r in serial] == [
            (r.delta, r.a, r.match) for r in parallel
        ]

    def test_unbalanced_included_when_asked(self):
        reports = sweep(
            SweepConfig(
                n_range=(2,), a_max=1, delta_budget=1, include_unbalanced=True
            )
        )
        assert any(sum(r.delta) != 0 for r in reports)
        assert all(r.match for r in reports)
