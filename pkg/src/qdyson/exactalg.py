"""Exact arbitrary-precision arithmetic.

Four sparse representations, all immutable in practice:

* ``QPoly`` -- integer Laurent polynomial in q;
* ``LaurentPoly`` -- multivariate Laurent polynomial in x_1..x_n with
  ``QPoly`` coefficients (the brute-force expansion of the q-Dyson product
  lives here);
* ``ZqPoly`` -- integer polynomial in q and z_1..z_n, Laurent exponents
  allowed (z_i stands for q^{a_i});
* ``RationalQZ`` -- sign * monomial * polynomial over a multiset of
  denominator atoms 1 - q^c * z^v, never expanded.

The exact ground field for the interpolation oracle is ``fractions.Fraction``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DenominatorVanishes, DimensionMismatch, InternalInconsistency

Rational = Fraction


def _trimmed(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


class QPoly:
    """Sparse integer Laurent polynomial in q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        d: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            d[e] = d.get(e, 0) + c
        self.terms = _trimmed(d)

    @staticmethod
    def zero() -> "QPoly":
        return QPoly()

    @staticmethod
    def one() -> "QPoly":
        return QPoly({0: 1})

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "QPoly":
        return QPoly({exp: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items())

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly({0: other})
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __add__(self, other: "QPoly") -> "QPoly":
        d = dict(self.terms)
        for e, c in other.terms.items():
            d[e] = d.get(e, 0) + c
        return QPoly(_trimmed(d))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __neg__(self) -> "QPoly":
        return QPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            if other == 0:
                return QPoly()
            return QPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, QPoly):
            return NotImplemented
        d: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return QPoly(_trimmed(d))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative power of a QPoly")
        out = QPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k."""
        return QPoly({e + k: c for e, c in self.terms.items()})

    def exact_div(self, other: "QPoly") -> Optional["QPoly"]:
        """Exact quotient self/other, or None if the division is inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return QPoly()
        qmin = self.min_exp() - other.min_exp()
        lead = other.max_exp()
        lead_c = other.terms[lead]
        rem = dict(self.terms)
        quo: dict[int, int] = {}
        while rem:
            e = max(rem)
            qe = e - lead
            if qe < qmin:
                return None
            qc, r = divmod(rem[e], lead_c)
            if r:
                return None
            quo[qe] = qc
            for oe, oc in other.terms.items():
                t = oe + qe
                rem[t] = rem.get(t, 0) - oc * qc
                if rem[t] == 0:
                    del rem[t]
        return QPoly(quo)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                mono = str(c)
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                mono = f"{head}q^{e}" if e != 1 else f"{head}q"
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def equal_as_rational(
    f: tuple[QPoly, QPoly], g: tuple[QPoly, QPoly]
) -> bool:
    """Exact equality of two fractions of q-polynomials by cross-multiplying."""
    fn, fd = f
    gn, gd = g
    if fd.is_zero() or gd.is_zero():
        raise ZeroDivisionError("zero denominator in rational comparison")
    return fn * gd == gn * fd


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with QPoly coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[tuple[int, ...], QPoly] | Iterable = (),
    ):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        d: dict[tuple[int, ...], QPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DimensionMismatch("exponent vector has wrong length")
            if not isinstance(coeff, QPoly):
                coeff = QPoly({0: coeff})
            prev = d.get(exps)
            coeff = prev + coeff if prev is not None else coeff
            if coeff.is_zero():
                d.pop(exps, None)
            else:
                d[exps] = coeff
        self.terms = d

    @staticmethod
    def zero(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars)

    @staticmethod
    def one(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {(0,) * nvars: QPoly.one()})

    @staticmethod
    def monomial(nvars: int, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        if not isinstance(coeff, QPoly):
            coeff = QPoly({0: coeff})
        return LaurentPoly(nvars, {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple[int, ...], QPoly]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.items())))

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"{self.nvars} variables vs {other.nvars} variables"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        d = dict(self.terms)
        for exps, c in other.terms.items():
            prev = d.get(exps)
            s = prev + c if prev is not None else c
            if s.is_zero():
                d.pop(exps, None)
            else:
                d[exps] = s
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars = self.nvars
        out.terms = d
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        d: dict[tuple[int, ...], dict[int, int]] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                acc = d.setdefault(exps, {})
                for q1, a1 in c1.terms.items():
                    for q2, a2 in c2.terms.items():
                        qe = q1 + q2
                        acc[qe] = acc.get(qe, 0) + a1 * a2
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars = self.nvars
        out.terms = {}
        for exps, acc in d.items():
            coeff = QPoly(_trimmed(acc))
            if not coeff.is_zero():
                out.terms[exps] = coeff
        return out

    def coefficient(self, kappa: Sequence[int]) -> QPoly:
        """Coefficient of prod x_i^{kappa_i}; zero if absent."""
        kappa = tuple(kappa)
        if len(kappa) != self.nvars:
            raise DimensionMismatch("coefficient index has wrong length")
        return self.terms.get(kappa, QPoly())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            xs = "*".join(
                f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}"
                for i, e in enumerate(exps)
                if e
            )
            parts.append(f"({c})" + (f"*{xs}" if xs else ""))
        return " + ".join(parts)

    __repr__ = __str__


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def laurent_coefficient(p: LaurentPoly, kappa: Sequence[int]) -> QPoly:
    return p.coefficient(kappa)


@dataclass(frozen=True)
class ZqMonomial:
    """The unit q^{qexp} * prod z_i^{zexp_i}."""

    qexp: int
    zexp: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "ZqMonomial":
        return ZqMonomial(0, (0,) * n)

    def __mul__(self, other: "ZqMonomial") -> "ZqMonomial":
        return ZqMonomial(
            self.qexp + other.qexp,
            tuple(x + y for x, y in zip(self.zexp, other.zexp)),
        )

    def is_identity(self) -> bool:
        return self.qexp == 0 and not any(self.zexp)


@dataclass(frozen=True)
class Atom:
    """An irreducible denominator factor 1 - q^{qexp} * prod z_i^{zexp_i}."""

    qexp: int
    zexp: tuple[int, ...]

    def __post_init__(self):
        if self.qexp == 0 and not any(self.zexp):
            raise ValueError("atom 1 - q^0 is identically zero")

    def sort_key(self):
        return (self.qexp, self.zexp)


def _graded_key(term: tuple[int, tuple[int, ...]]):
    qe, ze = term
    return (qe + sum(ze), qe, ze)


class ZqPoly:
    """Sparse integer polynomial in q and z_1..z_n (Laurent exponents allowed).

    Terms map (qexp, zexp-tuple) -> nonzero integer coefficient.
    """

    __slots__ = ("n", "terms")

    def __init__(
        self,
        n: int,
        terms: Mapping[tuple[int, tuple[int, ...]], int] | Iterable = (),
    ):
        self.n = n
        d: dict[tuple[int, tuple[int, ...]], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            qe, ze = key
            key = (qe, tuple(ze))
            if len(key[1]) != n:
                raise DimensionMismatch("z-exponent vector has wrong length")
            d[key] = d.get(key, 0) + c
        self.terms = _trimmed(d)

    @staticmethod
    def zero(n: int) -> "ZqPoly":
        return ZqPoly(n)

    @staticmethod
    def one(n: int) -> "ZqPoly":
        return ZqPoly(n, {(0, (0,) * n): 1})

    @staticmethod
    def monomial(n: int, qexp: int, zexp: Sequence[int], coeff: int = 1) -> "ZqPoly":
        return ZqPoly(n, {(qexp, tuple(zexp)): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple[int, tuple[int, ...]], int]]:
        """Terms in graded-lexicographic order on (qexp, zexp)."""
        return sorted(self.terms.items(), key=lambda kv: _graded_key(kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZqPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.items())))

    def _check(self, other: "ZqPoly"):
        if self.n != other.n:
            raise DimensionMismatch("z-variable counts differ")

    def __add__(self, other: "ZqPoly") -> "ZqPoly":
        self._check(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        out = ZqPoly.__new__(ZqPoly)
        out.n = self.n
        out.terms = _trimmed(d)
        return out

    def __neg__(self) -> "ZqPoly":
        out = ZqPoly.__new__(ZqPoly)
        out.n = self.n
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "ZqPoly") -> "ZqPoly":
        return self + (-other)

    def __mul__(self, other) -> "ZqPoly":
        if isinstance(other, int):
            out = ZqPoly.__new__(ZqPoly)
            out.n = self.n
            out.terms = {} if other == 0 else {
                k: c * other for k, c in self.terms.items()
            }
            return out
        if not isinstance(other, ZqPoly):
            return NotImplemented
        self._check(other)
        d: dict[tuple[int, tuple[int, ...]], int] = {}
        for (q1, z1), c1 in self.terms.items():
            for (q2, z2), c2 in other.terms.items():
                k = (q1 + q2, tuple(x + y for x, y in zip(z1, z2)))
                d[k] = d.get(k, 0) + c1 * c2
        out = ZqPoly.__new__(ZqPoly)
        out.n = self.n
        out.terms = _trimmed(d)
        return out

    __rmul__ = __mul__

    def mul_monomial(self, qexp: int, zexp: Sequence[int], coeff: int = 1) -> "ZqPoly":
        zexp = tuple(zexp)
        out = ZqPoly.__new__(ZqPoly)
        out.n = self.n
        out.terms = {
            (q + qexp, tuple(x + y for x, y in zip(z, zexp))): c * coeff
            for (q, z), c in self.terms.items()
        }
        return out

    def mul_atom(self, atom: Atom) -> "ZqPoly":
        """Multiply by 1 - q^{atom.qexp} z^{atom.zexp}."""
        return self - self.mul_monomial(atom.qexp, atom.zexp)

    def div_atom(self, atom: Atom) -> Optional["ZqPoly"]:
        """Exact quotient by 1 - q^b z^v, or None when not divisible.

        Uses ascending reduction under the weight order induced by the atom's
        exponent vector: the smallest surviving term of the remainder must be
        a term of the quotient, since multiplying by the atom's monomial
        strictly increases the weight.
        """
        if self.is_zero():
            return ZqPoly.zero(self.n)
        mvec = (atom.qexp,) + atom.zexp

        def wkey(k):
            q, z = k
            vec = (q,) + z
            return (sum(x * y for x, y in zip(vec, mvec)), vec)

        # lazy-deletion min-heap over weight keys; every term present in rem
        # has at least one live heap entry
        rem = dict(self.terms)
        heap = [(wkey(k), k) for k in rem]
        heapify(heap)
        max_key = max(key for key, _ in heap)
        quo: dict[tuple[int, tuple[int, ...]], int] = {}
        while rem:
            key, t = heappop(heap)
            if t not in rem:
                continue  # stale entry for a cancelled term
            if key > max_key:
                return None
            c = rem.pop(t)
            quo[t] = quo.get(t, 0) + c
            tm = (
                t[0] + atom.qexp,
                tuple(x + y for x, y in zip(t[1], atom.zexp)),
            )
            if tm in rem:
                rem[tm] += c
                if rem[tm] == 0:
                    del rem[tm]
            else:
                rem[tm] = c
                heappush(heap, (wkey(tm), tm))
        return ZqPoly(self.n, _trimmed(quo))

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def extract_unit(self) -> tuple["ZqPoly", ZqMonomial, int]:
        """Factor self = sign * monomial * reduced with the reduced polynomial
        having exponent minima 0 in every coordinate and a positive leading
        (graded-lex greatest) coefficient."""
        if self.is_zero():
            return self, ZqMonomial.identity(self.n), 1
        qmin = min(q for q, _ in self.terms)
        zmin = tuple(
            min(z[i] for _, z in self.terms) for i in range(self.n)
        )
        shifted = self.mul_monomial(-qmin, tuple(-m for m in zmin))
        lead_key = max(shifted.terms, key=_graded_key)
        sign = 1 if shifted.terms[lead_key] > 0 else -1
        if sign < 0:
            shifted = -shifted
        return shifted, ZqMonomial(qmin, zmin), sign

    def substitute_z(self, a: Sequence[int]) -> QPoly:
        """Apply z_i -> q^{a_i}; exact Laurent polynomial in q."""
        if len(a) != self.n:
            raise DimensionMismatch("substitution vector has wrong length")
        d: dict[int, int] = {}
        for (q, z), c in self.terms.items():
            e = q + sum(x * y for x, y in zip(z, a))
            d[e] = d.get(e, 0) + c
        return QPoly(_trimmed(d))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (q, z), c in self.items():
            factors = []
            if abs(c) != 1 or (q == 0 and not any(z)):
                factors.append(str(abs(c)))
            if q:
                factors.append(f"q^{q}" if q != 1 else "q")
            for i, e in enumerate(z):
                if e:
                    factors.append(f"z{i + 1}^{e}" if e != 1 else f"z{i + 1}")
            mono = "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + mono)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__


def atom_trial_divide(numer: ZqPoly, atom: Atom) -> Optional[ZqPoly]:
    return numer.div_atom(atom)


def atom_poly(n: int, atom: Atom) -> ZqPoly:
    return ZqPoly.one(n).mul_atom(atom)


@dataclass(frozen=True)
class RationalQZ:
    """sign * unit * numer / prod(atoms); the factored rational function R.

    The denominator is a multiset of atoms, stored as a sorted tuple of
    (atom, multiplicity) pairs and never expanded.
    """

    sign: int
    unit: ZqMonomial
    numer: ZqPoly
    denom: tuple[tuple[Atom, int], ...]

    @property
    def n(self) -> int:
        return len(self.unit.zexp)

    @staticmethod
    def zero(n: int) -> "RationalQZ":
        return RationalQZ(1, ZqMonomial.identity(n), ZqPoly.zero(n), ())

    @staticmethod
    def one(n: int) -> "RationalQZ":
        return RationalQZ(1, ZqMonomial.identity(n), ZqPoly.one(n), ())

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def denom_counter(self) -> Counter:
        return Counter(dict(self.denom))

    @staticmethod
    def make(
        sign: int,
        unit: ZqMonomial,
        numer: ZqPoly,
        denom: Mapping[Atom, int] | Counter,
    ) -> "RationalQZ":
        """Canonical constructor: cancels atoms into the numerator by exact
        trial division, then extracts the unit monomial and the sign."""
        n = numer.n
        if numer.is_zero():
            return RationalQZ.zero(n)
        remaining: Counter = Counter()
        for atom, mult in denom.items():
            if mult < 0:
                raise ValueError("negative atom multiplicity")
            while mult:
                quo = numer.div_atom(atom)
                if quo is None:
                    break
                numer = quo
                mult -= 1
            if mult:
                remaining[atom] = mult
        reduced, mono, s = numer.extract_unit()
        return RationalQZ(
            sign * s,
            unit * mono,
            reduced,
            tuple(sorted(remaining.items(), key=lambda kv: kv[0].sort_key())),
        )

    def __mul__(self, other: "RationalQZ") -> "RationalQZ":
        if not isinstance(other, RationalQZ):
            return NotImplemented
        return RationalQZ.make(
            self.sign * other.sign,
            self.unit * other.unit,
            self.numer * other.numer,
            self.denom_counter() + other.denom_counter(),
        )

    def cleared_numer(self, extra_denom: Mapping[Atom, int] = ()) -> ZqPoly:
        """sign * unit * numer * prod(extra atoms) as a single ZqPoly."""
        poly = self.numer.mul_monomial(self.unit.qexp, self.unit.zexp, self.sign)
        for atom, mult in dict(extra_denom).items():
            for _ in range(mult):
                poly = poly.mul_atom(atom)
        return poly


def substitute_z(r: RationalQZ, a: Sequence[int]) -> tuple[QPoly, QPoly]:
    """Specialize z_i -> q^{a_i}; returns (numerator, denominator) QPolys."""
    if len(a) != r.n:
        raise DimensionMismatch("substitution vector has wrong length")
    if r.is_zero():
        return QPoly(), QPoly.one()
    num = r.numer.substitute_z(a) * r.sign
    num = num.shift(r.unit.qexp + sum(x * y for x, y in zip(r.unit.zexp, a)))
    den = QPoly.one()
    for atom, mult in r.denom:
        e = atom.qexp + sum(x * y for x, y in zip(atom.zexp, a))
        factor = QPoly({0: 1, e: -1}) if e != 0 else QPoly()
        if factor.is_zero():
            raise DenominatorVanishes(
                f"atom 1 - q^{atom.qexp} z^{atom.zexp} vanishes at a={tuple(a)}"
            )
        den = den * factor ** mult
    return num, den
