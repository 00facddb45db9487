"""Exact-arithmetic core: polynomials, Laurent polynomials, factored rationals."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdyson.errors import DenominatorVanishes, DimensionMismatch
from qdyson.exactalg import (
    Atom,
    LaurentPoly,
    QPoly,
    RationalQZ,
    ZqMonomial,
    ZqPoly,
    atom_trial_divide,
    equal_as_rational,
    substitute_z,
)


def qp(**terms):
    return QPoly({int(k[1:]): v for k, v in terms.items()})


class TestQPoly:
    def test_basic_arithmetic(self):
        p = QPoly({0: 1, 1: 1})
        assert p + p == QPoly({0: 2, 1: 2})
        assert p - p == QPoly()
        assert p * p == QPoly({0: 1, 1: 2, 2: 1})
        assert (p * 0).is_zero()

    def test_laurent_exponents(self):
        p = QPoly({-1: 1, 2: -3})
        assert p.shift(1) == QPoly({0: 1, 3: -3})
        assert p.min_exp() == -1 and p.max_exp() == 2

    def test_exact_div(self):
        num = QPoly({0: 1, 2: -1})  # 1 - q^2
        den = QPoly({0: 1, 1: -1})  # 1 - q
        assert num.exact_div(den) == QPoly({0: 1, 1: 1})
        assert den.exact_div(num) is None
        assert QPoly().exact_div(den) == QPoly()

    def test_pow(self):
        p = QPoly({0: 1, 1: -1})
        assert p ** 0 == QPoly.one()
        assert p ** 3 == p * p * p


def x_poly(nvars, *terms):
    return LaurentPoly(nvars, [(e, c) for e, c in terms])


class TestLaurentPoly:
    def test_mul_identity(self):
        p = x_poly(2, ((1, -1), -1), ((0, 0), 1))  # 1 - x1/x2
        assert p * LaurentPoly.one(2) == p

    def test_mul_hand_expansion(self):
        # (1 - x1/x2)(1 - q x2/x1) = 1 + q - q x2/x1 - x1/x2
        p = x_poly(2, ((0, 0), 1), ((1, -1), -1))
        q = LaurentPoly(2, [((0, 0), 1), ((-1, 1), QPoly.monomial(1, -1))])
        expected = LaurentPoly(
            2,
            [
                ((0, 0), QPoly({0: 1, 1: 1})),
                ((-1, 1), QPoly.monomial(1, -1)),
                ((1, -1), QPoly({0: -1})),
            ],
        )
        assert p * q == expected

    def test_mul_annihilator(self):
        p = x_poly(2, ((1, -1), -1), ((0, 0), 1))
        assert (p * LaurentPoly.zero(2)).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            LaurentPoly.one(2) * LaurentPoly.one(3)
        with pytest.raises(DimensionMismatch):
            LaurentPoly.one(2).coefficient((0, 0, 0))

    def test_coefficient_extraction(self):
        p = LaurentPoly(
            2,
            [
                ((0, 0), QPoly({0: 1, 1: 1})),
                ((-1, 1), QPoly.monomial(1, -1)),
                ((1, -1), QPoly({0: -1})),
            ],
        )
        assert p.coefficient((1, -1)) == QPoly({0: -1})
        assert p.coefficient((0, 0)) == QPoly({0: 1, 1: 1})
        assert p.coefficient((5, 5)).is_zero()


small_qpoly = st.dictionaries(
    st.integers(-3, 3), st.integers(-4, 4), max_size=4
).map(QPoly)


def small_laurent(nvars):
    return st.dictionaries(
        st.tuples(*([st.integers(-2, 2)] * nvars)),
        small_qpoly,
        max_size=3,
    ).map(lambda d: LaurentPoly(nvars, d))


class TestRingLaws:
    @settings(max_examples=60, deadline=None)
    @given(small_laurent(2), small_laurent(2), small_laurent(2))
    def test_mul_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=60, deadline=None)
    @given(small_laurent(2), small_laurent(2))
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @settings(max_examples=60, deadline=None)
    @given(small_laurent(2), small_laurent(2), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
    def test_coefficient_additive(self, a, b, kappa):
        assert (a + b).coefficient(kappa) == a.coefficient(kappa) + b.coefficient(kappa)


class TestZqPoly:
    def test_atom_trial_divide_quotient(self):
        # 1 - q^2 z1^2 = (1 - q z1)(1 + q z1)
        n1 = ZqPoly(1, {(0, (0,)): 1, (2, (2,)): -1})
        quo = atom_trial_divide(n1, Atom(1, (1,)))
        assert quo == ZqPoly(1, {(0, (0,)): 1, (1, (1,)): 1})

    def test_atom_trial_divide_self(self):
        n1 = ZqPoly(1, {(0, (0,)): 1, (1, (1,)): -1})
        assert atom_trial_divide(n1, Atom(1, (1,))) == ZqPoly.one(1)

    def test_atom_trial_divide_fails(self):
        n1 = ZqPoly(1, {(0, (0,)): 1, (1, (1,)): 1})  # 1 + q z1
        assert atom_trial_divide(n1, Atom(1, (1,))) is None

    @settings(max_examples=80, deadline=None)
    @given(
        st.dictionaries(
            st.tuples(st.integers(0, 3), st.tuples(st.integers(0, 3))),
            st.integers(-3, 3),
            min_size=1,
            max_size=4,
        ),
        st.integers(0, 2),
        st.integers(0, 2),
    )
    def test_round_trip(self, terms, aq, az):
        if aq == 0 and az == 0:
            aq = 1
        atom = Atom(aq, (az,))
        poly = ZqPoly(1, terms)
        product = poly.mul_atom(atom)
        quo = product.div_atom(atom)
        if poly.is_zero():
            assert quo == ZqPoly.zero(1)
        else:
            assert quo == poly

    def test_atom_invariant(self):
        with pytest.raises(ValueError):
            Atom(0, (0, 0))


class TestSubstituteZ:
    def test_direct(self):
        # (1 - q z1) at a = (2) -> (1 - q^3, 1)
        r = RationalQZ.make(
            1,
            ZqMonomial.identity(1),
            ZqPoly(1, {(0, (0,)): 1, (1, (1,)): -1}),
            Counter(),
        )
        num, den = substitute_z(r, (2,))
        assert num == QPoly({0: 1, 3: -1})
        assert den == QPoly.one()

    def test_worked_two_variable(self):
        # -(1 - z1)/(1 - q z2) at a = (1, 1) -> (-(1 - q), 1 - q^2)
        r = RationalQZ.make(
            -1,
            ZqMonomial.identity(2),
            ZqPoly(2, {(0, (0, 0)): 1, (0, (1, 0)): -1}),
            Counter({Atom(1, (0, 1)): 1}),
        )
        num, den = substitute_z(r, (1, 1))
        assert num == QPoly({0: -1, 1: 1})
        assert den == QPoly({0: 1, 2: -1})

    def test_zero(self):
        num, den = substitute_z(RationalQZ.zero(1), (3,))
        assert num.is_zero() and den == QPoly.one()

    def test_denominator_vanishes(self):
        r = RationalQZ(
            1,
            ZqMonomial.identity(1),
            ZqPoly.one(1),
            ((Atom(0, (1,)), 1),),  # 1 - z1 -> 1 - q^0 at a1 = 0
        )
        with pytest.raises(DenominatorVanishes):
            substitute_z(r, (0,))

    @settings(max_examples=40, deadline=None)
    @given(
        st.tuples(st.integers(1, 3), st.integers(1, 3)),
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.tuples(st.integers(0, 2), st.integers(0, 2))),
            st.integers(-2, 2),
            max_size=3,
        ),
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.tuples(st.integers(0, 2), st.integers(0, 2))),
            st.integers(-2, 2),
            max_size=3,
        ),
    )
    def test_multiplicative(self, a, t1, t2):
        r1 = RationalQZ.make(
            1, ZqMonomial.identity(2), ZqPoly(2, t1), Counter({Atom(1, (1, 0)): 1})
        )
        r2 = RationalQZ.make(
            1, ZqMonomial.identity(2), ZqPoly(2, t2), Counter({Atom(2, (0, 1)): 1})
        )
        lhs = substitute_z(r1 * r2, a)
        n1, d1 = substitute_z(r1, a)
        n2, d2 = substitute_z(r2, a)
        assert equal_as_rational(lhs, (n1 * n2, d1 * d2))


class TestEqualAsRational:
    def test_factored(self):
        assert equal_as_rational(
            (QPoly({0: 1, 2: -1}), QPoly({0: 1, 1: -1})),
            (QPoly({0: 1, 1: 1}), QPoly.one()),
        )

    def test_unequal(self):
        assert not equal_as_rational(
            (QPoly.one(), QPoly.one()), (QPoly.monomial(1), QPoly.one())
        )

    def test_zero_equivalence(self):
        assert equal_as_rational(
            (QPoly(), QPoly({0: 1, 1: -1})), (QPoly(), QPoly({0: 1, 1: 1}))
        )


class TestCanonicalization:
    def test_deterministic_ordering(self):
        terms = {(1, (0, 1)): 2, (0, (1, 0)): -1, (1, (1, 0)): 3}
        p1 = ZqPoly(2, terms)
        p2 = ZqPoly(2, dict(reversed(list(terms.items()))))
        assert p1.items() == p2.items()
        assert str(p1) == str(p2)

    def test_make_is_idempotent(self):
        r = RationalQZ.make(
            -1,
            ZqMonomial(1, (0, 2)),
            ZqPoly(2, {(1, (1, 0)): 2, (0, (0, 0)): -2}),
            Counter({Atom(1, (0, 1)): 2}),
        )
        again = RationalQZ.make(r.sign, r.unit, r.numer, Counter(dict(r.denom)))
        assert again == r
