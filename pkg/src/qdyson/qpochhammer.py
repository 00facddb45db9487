"""Symbolic q-Pochhammer algebra.

A ``QExpr`` is a value of the shape

    (-1)^parity * q^qexp * prod (q)_L ^ e_L

where parity is a mod-2 affine form, qexp an exact-rational quadratic form,
and each L an affine-linear form in a_1..a_n with nonnegative generic sign.
Evaluations of the cleared q-Dyson product and of the grid node-polynomial
derivatives both land here; ``normalize_to_rational`` then divides out the
q-multinomial coefficient and collapses what survives into a factored
rational function of q and z_1..z_n (z_i = q^{a_i}).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import InternalInconsistency, MixedSign
from .exactalg import Atom, QPoly, RationalQZ, ZqMonomial, ZqPoly
from .symforms import (
    AffineForm,
    ParityForm,
    QuadForm,
    SignClass,
    parity_reduce,
    quad_finalize,
)


def _canon_poch(n: int, poch: Mapping[AffineForm, int]) -> tuple:
    """Drop unit factors, validate indices, and sort canonically."""
    out = []
    for index, exp in poch.items():
        if exp == 0 or index.is_zero():
            continue
        sign = index.generic_sign()
        if sign not in (SignClass.POSITIVE, SignClass.ZERO):
            raise InternalInconsistency(
                f"(q)_L with generically non-positive index L = {index}"
            )
        out.append((index, exp))
    out.sort(key=lambda kv: (kv[0].coeffs, kv[0].constant, kv[1]))
    return tuple(out)


@dataclass(frozen=True)
class QExpr:
    """(-1)^parity * q^qexp * product of (q)_L factors; or the zero value."""

    n: int
    parity: ParityForm
    qexp: QuadForm
    poch: tuple[tuple[AffineForm, int], ...]
    zero: bool = False

    @staticmethod
    def identity(n: int) -> "QExpr":
        return QExpr(n, ParityForm.zero(n), QuadForm.zero(n), ())

    @staticmethod
    def make_zero(n: int) -> "QExpr":
        return QExpr(n, ParityForm.zero(n), QuadForm.zero(n), (), zero=True)

    @staticmethod
    def build(
        n: int,
        parity: ParityForm,
        qexp: QuadForm,
        poch: Mapping[AffineForm, int],
    ) -> "QExpr":
        return QExpr(n, parity, qexp, _canon_poch(n, poch))

    def is_zero(self) -> bool:
        return self.zero

    def poch_counter(self) -> Counter:
        return Counter(dict(self.poch))

    def __mul__(self, other: "QExpr") -> "QExpr":
        if not isinstance(other, QExpr):
            return NotImplemented
        if self.zero or other.zero:
            return QExpr.make_zero(self.n)
        merged = self.poch_counter()
        merged.update(dict(other.poch))
        return QExpr.build(
            self.n,
            self.parity + other.parity,
            self.qexp + other.qexp,
            merged,
        )

    def inverse(self) -> "QExpr":
        if self.zero:
            raise ZeroDivisionError("inverse of the zero q-expression")
        return QExpr.build(
            self.n,
            self.parity,
            -self.qexp,
            {index: -exp for index, exp in self.poch},
        )

    def __truediv__(self, other: "QExpr") -> "QExpr":
        return self * other.inverse()

    def evaluate_numeric(self, a: Sequence[int]) -> tuple[QPoly, QPoly]:
        """Specialize a and return (numerator, denominator) in q exactly."""
        if self.zero:
            return QPoly(), QPoly.one()
        sign = -1 if self.parity.evaluate(a) else 1
        e = self.qexp.evaluate(a)
        if e.denominator != 1:
            raise InternalInconsistency(f"non-integral q-exponent {e} at a={a}")
        num = QPoly.monomial(int(e), sign)
        den = QPoly.one()
        for index, exp in self.poch:
            val = index.evaluate(a)
            if val < 0:
                # the convention 1/(q)_{-k} = 0: a negative index in the
                # denominator kills the whole value; in a numerator it has
                # no finite meaning
                if exp < 0:
                    return QPoly(), QPoly.one()
                raise InternalInconsistency(
                    f"(q)_L with L = {index} negative at a={tuple(a)}"
                )
            factor = q_pochhammer_numeric(1, val) ** abs(exp)
            if exp > 0:
                num = num * factor
            else:
                den = den * factor
        return num, den


def rewrite_pochhammer(e: AffineForm, f: AffineForm) -> QExpr:
    """Rewrite (q^e)_f in terms of (q)_L factors times a sign and a q-power.

    Three outcomes: a generically positive base gives a ratio of two (q)_L;
    a generically all-negative exponent window [e, e+f-1] gives the reflected
    ratio with an explicit sign and quadratic q-power; a window that
    generically contains zero gives the zero value.
    """
    n = f.n
    fs = f.generic_sign()
    if fs == SignClass.ZERO:
        return QExpr.identity(n)
    if fs != SignClass.POSITIVE:
        raise MixedSign(f"Pochhammer length f = {f} is not generically >= 0")
    se = e.generic_sign()
    top = e + f - 1
    st = top.generic_sign()
    if se == SignClass.POSITIVE:
        return QExpr.build(
            n,
            ParityForm.zero(n),
            QuadForm.zero(n),
            Counter({top: 1, e - 1: -1}),
        )
    if st == SignClass.NEGATIVE:
        # prod over t in [e, e+f-1], all t < 0:
        # 1 - q^t = -q^t (1 - q^{-t}), hence the sign (-1)^f, the q-power
        # f*e + f(f-1)/2, and the factors (q)_{-e} / (q)_{-e-f}.
        qexp = QuadForm.from_product(f, e) + QuadForm.choose2(f)
        return QExpr.build(
            n,
            ParityForm.from_affine(f),
            qexp,
            Counter({-e: 1, (-e) - f: -1}),
        )
    if se in (SignClass.ZERO, SignClass.NEGATIVE) and st in (
        SignClass.ZERO,
        SignClass.POSITIVE,
    ):
        return QExpr.make_zero(n)
    raise MixedSign(
        f"cannot classify the window of (q^e)_f with e = {e}, f = {f}"
    )


@dataclass(frozen=True)
class GridSpec:
    """Per-coordinate geometric grids A_i = {q^alpha : c_i <= alpha <= c_i + d_i}."""

    lower: tuple[int, ...]
    degree: tuple[AffineForm, ...]

    @property
    def n(self) -> int:
        return len(self.lower)


def evaluate_product_at_point(alpha: Sequence[AffineForm]) -> QExpr:
    """The cleared q-Dyson product F at x_i = q^{alpha_i}.

    F multiplies each pair factor (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j} by the
    monomial x_j^{a_i} x_i^{a_j}, so the value at a grid point is a product
    of two Pochhammer rewrites and one q-power per pair i < j.
    """
    n = len(alpha)
    out = QExpr.identity(n)
    for i in range(n):
        ai = AffineForm.param(n, i)
        for j in range(i + 1, n):
            aj = AffineForm.param(n, j)
            left = rewrite_pochhammer(alpha[i] - alpha[j], ai)
            right = rewrite_pochhammer(alpha[j] - alpha[i] + 1, aj)
            if left.is_zero() or right.is_zero():
                return QExpr.make_zero(n)
            mono = QExpr(
                n,
                ParityForm.zero(n),
                QuadForm.from_product(alpha[j], ai)
                + QuadForm.from_product(alpha[i], aj),
                (),
            )
            out = out * left * right * mono
    return out


def phi_prime_at_point(i: int, alpha_i: AffineForm, grid: GridSpec) -> QExpr:
    """Derivative of the node polynomial of grid coordinate i at q^{alpha_i}.

    With j = alpha_i - c_i and d the grid degree, the product of the root
    differences is (-1)^j q^{c*d + binom(j,2) + j(d-j)} (q)_j (q)_{d-j}; the
    q^{c*d} factor comes from pulling q^{c} out of each of the d differences.
    """
    n = grid.n
    c = grid.lower[i]
    d = grid.degree[i]
    j = alpha_i - c
    for form in (j, d - j):
        if form.generic_sign() not in (SignClass.POSITIVE, SignClass.ZERO):
            raise MixedSign(
                f"grid offset {form} is not generically in [0, d] at coordinate {i}"
            )
    qexp = (
        QuadForm.from_affine(d.scale(c))
        + QuadForm.choose2(j)
        + QuadForm.from_product(j, d - j)
    )
    poch: Counter = Counter()
    poch[j] += 1
    poch[d - j] += 1  # j and d-j may coincide; their exponents must add
    return QExpr.build(n, ParityForm.from_affine(j), qexp, poch)


def q_multinomial_symbols(n: int) -> Counter:
    """(q)_{a_1+..+a_n} over prod (q)_{a_i}, as a Pochhammer multiset."""
    if n < 1:
        raise ValueError("need n >= 1")
    c: Counter = Counter({AffineForm.total(n): 1})
    for i in range(n):
        c[AffineForm.param(n, i)] -= 1
    return Counter({k: v for k, v in c.items() if v})


def _pair_group(
    vec: tuple[int, ...],
    numers: list[int],
    denoms: list[int],
    num_atoms: list[Atom],
    den_atoms: Counter,
) -> None:
    """Pair numerator/denominator (q)_L factors sharing the a-coefficient
    vector ``vec`` (sorted by constant offset) and expand each pair into
    atoms 1 - q^t z^vec."""
    if len(numers) != len(denoms):
        raise InternalInconsistency(
            f"unmatched (q)_L factors with coefficient vector {vec}: "
            f"{len(numers)} in the numerator vs {len(denoms)} in the denominator"
        )
    numers.sort()
    denoms.sort()
    for cn, cd in zip(numers, denoms):
        if cn >= cd:
            # (q)_{L+cn-cd}/(q)_L = prod_{t=cd+1}^{cn} (1 - q^t z^vec)
            for t in range(cd + 1, cn + 1):
                num_atoms.append(Atom(t, vec))
        else:
            for t in range(cn + 1, cd + 1):
                den_atoms[Atom(t, vec)] += 1


def normalize_to_rational(expr: QExpr, n: int) -> RationalQZ:
    """Divide a q-expression by the q-multinomial coefficient and collapse
    the survivors into a factored rational function of q and z_1..z_n.

    The a-dependent signs and quadratic q-exponents must cancel and every
    surviving (q)_L group must pair up; any leftover contradicts the
    rationality of the coefficient and aborts.
    """
    if expr.is_zero():
        raise InternalInconsistency("cannot normalize the zero q-expression")
    net = expr.poch_counter()
    net.subtract(q_multinomial_symbols(n))

    groups: dict[tuple[int, ...], tuple[list[int], list[int]]] = {}
    const_numer: list[int] = []
    const_denom: Counter = Counter()
    for index, exp in net.items():
        if exp == 0:
            continue
        if not any(index.coeffs):
            m = index.constant
            if m < 0:
                raise InternalInconsistency(f"numeric factor (q)_{m} with m < 0")
            if exp > 0:
                const_numer.extend([m] * exp)
            else:
                for s in range(1, m + 1):
                    const_denom[Atom(s, (0,) * n)] += -exp
            continue
        numers, denoms = groups.setdefault(index.coeffs, ([], []))
        if exp > 0:
            numers.extend([index.constant] * exp)
        else:
            denoms.extend([index.constant] * (-exp))

    num_atoms: list[Atom] = []
    den_atoms: Counter = Counter(const_denom)
    for vec in sorted(groups):
        numers, denoms = groups[vec]
        _pair_group(vec, numers, denoms, num_atoms, den_atoms)

    bit = parity_reduce(expr.parity)
    if bit is None:
        raise InternalInconsistency(
            f"a-dependent sign survives normalization: {expr.parity}"
        )
    exponent = quad_finalize(expr.qexp)
    unit = ZqMonomial(exponent.constant, exponent.coeffs)

    numer = ZqPoly.one(n)
    for m in const_numer:
        for s in range(1, m + 1):
            numer = numer.mul_atom(Atom(s, (0,) * n))
    for atom in num_atoms:
        numer = numer.mul_atom(atom)
    return RationalQZ.make(-1 if bit else 1, unit, numer, den_atoms)


def q_pochhammer_numeric(e: int, f: int) -> QPoly:
    """(q^e)_f = prod_{t=0}^{f-1} (1 - q^{t+e}), Laurent in q when e < 0."""
    if f < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    out = QPoly.one()
    for t in range(f):
        exp = t + e
        if exp == 0:
            return QPoly()
        out = out * QPoly({0: 1, exp: -1})
    return out


def q_multinomial_numeric(a: Sequence[int]) -> QPoly:
    """(q)_{a_1+..+a_n} / prod (q)_{a_i}; the division is exact."""
    if any(x < 0 for x in a):
        raise ValueError("multinomial arguments must be nonnegative")
    num = q_pochhammer_numeric(1, sum(a))
    for x in a:
        quo = num.exact_div(q_pochhammer_numeric(1, x))
        if quo is None:
            raise InternalInconsistency("q-multinomial division was inexact")
        num = quo
    return num
