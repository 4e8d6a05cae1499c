"""
Exact arithmetic in Q(q).

Scalars are fractions of Laurent polynomials with rational coefficients, kept in a
canonical form so that equality is syntactic:

- the denominator is a primitive polynomial in Z[q] with positive leading
  coefficient and nonzero constant term,
- every power of q and every rational factor lives in the numerator,
- numerator and denominator are coprime.

The gcd in Z[q] comes from sympy's sparse polynomial rings. Denominators equal to 1
(the overwhelmingly common case for Hecke and quantum-group matrices) never touch
sympy at all.

Serialization:
    ( -1*q^-1 + 1*q ) / ( 1 )

The shared power of q stays in the numerator as negative exponents, so q - q^-1
is written as above rather than as ( -1 + 1*q^2 ) / ( 1*q ). rf_parse accepts
both forms and returns the same canonical value.
"""

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Mapping, Union

from sympy import ZZ, symbols

BigRat = Fraction

QSYM = symbols("q")
ZQ = ZZ[QSYM]
_RING = ZQ.ring

Scalar = Union["RatFunc", int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


class LaurentPoly:
    """Element of Q[q, q^-1] as an immutable map exponent -> coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Union[Fraction, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = {}
        for exp, coeff in items:
            coeff = Fraction(coeff)
            if coeff:
                cleaned[int(exp)] = coeff
        self._terms = dict(sorted(cleaned.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: Union[Fraction, int] = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def min_exp(self) -> int:
        return next(iter(self._terms))

    @property
    def max_exp(self) -> int:
        return next(reversed(self._terms))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_one():
            return other
        if other.is_one():
            return self
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def scale(self, factor: Fraction) -> "LaurentPoly":
        return LaurentPoly({e: c * factor for e, c in self._terms.items()})

    def evaluate(self, point: Fraction) -> Fraction:
        point = Fraction(point)
        return sum((c * point**e for e, c in self._terms.items()), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_string(self) -> str:
        if not self._terms:
            return "( 0 )"
        parts = []
        for exp, coeff in self._terms.items():
            if exp == 0:
                parts.append(f"{coeff}")
            elif exp == 1:
                parts.append(f"{coeff}*q")
            else:
                parts.append(f"{coeff}*q^{exp}")
        return "( " + " + ".join(parts) + " )"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"Malformed Laurent polynomial: {text!r}")
        body = body[1:-1].strip()
        terms: dict[int, Fraction] = {}
        for chunk in body.split(" + "):
            match = _TERM_RE.match(chunk.strip())
            if not match:
                raise ValueError(f"Malformed term {chunk!r} in {text!r}")
            coeff, has_q, exp = match.groups()
            power = 0 if not has_q else int(exp) if exp is not None else 1
            terms[power] = terms.get(power, 0) + Fraction(coeff)
        return cls(terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_string()})"


_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)(\*q(?:\^(-?\d+))?)?$")
_RATFUNC_RE = re.compile(r"^\s*(\([^()]*\))\s*/\s*(\([^()]*\))\s*$")

_ZERO_POLY = LaurentPoly()
_ONE_POLY = LaurentPoly({0: 1})


def _to_int_poly(lp: LaurentPoly):
    """Split lp as q^shift * poly / denom with poly in Z[q], poly(0) != 0."""
    shift = lp.min_exp
    denom = lcm(*(c.denominator for _, c in lp.items()))
    poly = _RING.from_dict({(e - shift,): int(c * denom) for e, c in lp.items()})
    return poly, shift, denom


def _from_int_poly(poly, shift: int, factor: Fraction) -> LaurentPoly:
    return LaurentPoly({mon[0] + shift: factor * int(c) for mon, c in poly.terms()})


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_monomial():
        exp, coeff = next(den.items())
        return num.shift(-exp).scale(1 / coeff), _ONE_POLY
    n_poly, n_shift, n_den = _to_int_poly(num)
    d_poly, d_shift, d_den = _to_int_poly(den)
    _, n_poly, d_poly = n_poly.cofactors(d_poly)
    unit = int(d_poly.content())
    if d_poly.LC < 0:
        unit = -unit
    d_poly = d_poly.quo_ground(unit)
    factor = Fraction(d_den, n_den * unit)
    return (
        _from_int_poly(n_poly, n_shift - d_shift, factor),
        _from_int_poly(d_poly, 0, Fraction(1)),
    )


class RatFunc:
    """Canonical element of Q(q). Immutable and hashable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _ONE_POLY, *, canonical: bool = False):
        if not canonical:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, value: Union[int, Fraction]) -> "RatFunc":
        return cls(LaurentPoly({0: value}), canonical=True)

    @classmethod
    def monomial(cls, exp: int, coeff: Union[int, Fraction] = 1) -> "RatFunc":
        return cls(LaurentPoly({exp: coeff}), canonical=True)

    @classmethod
    def coerce(cls, value: Scalar) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.from_int(value)
        raise TypeError(f"Cannot coerce {type(value).__name__} to RatFunc")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other: Scalar) -> "RatFunc":
        return rf_add(self, RatFunc.coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "RatFunc":
        return rf_sub(self, RatFunc.coerce(other))

    def __rsub__(self, other: Scalar) -> "RatFunc":
        return rf_sub(RatFunc.coerce(other), self)

    def __mul__(self, other: Scalar) -> "RatFunc":
        return rf_mul(self, RatFunc.coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "RatFunc":
        return rf_mul(self, rf_inv(RatFunc.coerce(other)))

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return rf_mul(RatFunc.coerce(other), rf_inv(self))

    def __neg__(self) -> "RatFunc":
        return rf_neg(self)

    def __pow__(self, exponent: int) -> "RatFunc":
        return rf_pow(self, exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def evaluate(self, point: BigRat) -> BigRat:
        return rf_eval(self, point)

    def __str__(self) -> str:
        return rf_format(self)

    def __repr__(self) -> str:
        return f"RatFunc({rf_format(self)})"


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.den.is_one() and b.den.is_one():
        return RatFunc(a.num + b.num, canonical=True)
    if a.den == b.den:
        return RatFunc(a.num + b.num, a.den)
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)


def rf_neg(a: RatFunc) -> RatFunc:
    return RatFunc(-a.num, a.den, canonical=True)


def rf_sub(a: RatFunc, b: RatFunc) -> RatFunc:
    return rf_add(a, rf_neg(b))


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.is_zero() or b.is_zero():
        return ZERO
    if a.den.is_one() and b.den.is_one():
        return RatFunc(a.num * b.num, canonical=True)
    return RatFunc(a.num * b.num, a.den * b.den)


def rf_inv(a: RatFunc) -> RatFunc:
    """Multiplicative inverse; raises ZeroDivisionError on 0."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of the zero rational function")
    return RatFunc(a.den, a.num)


def rf_pow(a: RatFunc, exponent: int) -> RatFunc:
    if exponent < 0:
        return rf_pow(rf_inv(a), -exponent)
    result, base = ONE, a
    while exponent:
        if exponent & 1:
            result = rf_mul(result, base)
        base = rf_mul(base, base)
        exponent >>= 1
    return result


def rf_eval(a: RatFunc, point: BigRat) -> BigRat:
    """Evaluate at a rational point; raises PoleError if the denominator vanishes."""
    point = Fraction(point)
    if point == 0 and not a.num.is_zero() and a.num.min_exp < 0:
        raise PoleError("q = 0 is a pole of the numerator")
    den = a.den.evaluate(point)
    if den == 0:
        raise PoleError(f"denominator vanishes at q = {point}")
    return a.num.evaluate(point) / den


def rf_format(a: RatFunc) -> str:
    return f"{a.num.to_string()} / {a.den.to_string()}"


def rf_parse(text: str) -> RatFunc:
    """Inverse of rf_format; non-canonical input is normalized."""
    match = _RATFUNC_RE.match(text)
    if not match:
        raise ValueError(f"Malformed rational function: {text!r}")
    return RatFunc(LaurentPoly.parse(match.group(1)), LaurentPoly.parse(match.group(2)))


def q_power(exp: int) -> RatFunc:
    return RatFunc.monomial(exp)


def clear_denominators(values: list[RatFunc]) -> list:
    """
    Scale values by one common nonzero element of Q(q) so that every entry is a
    polynomial in Z[q] (an element of ZQ), then strip the common content and
    power of q. Zero entries map to ZQ's zero.
    """
    parts = []
    common_den = _RING.one
    for a in values:
        if a and not a.den.is_one():
            common_den = common_den.lcm(_to_int_poly(a.den)[0])
    for a in values:
        if not a:
            parts.append(None)
            continue
        poly, shift, denom = _to_int_poly(a.num)
        cofactor = common_den if a.den.is_one() else common_den.exquo(_to_int_poly(a.den)[0])
        parts.append((poly * cofactor, shift, denom))
    present = [p for p in parts if p is not None]
    if not present:
        return [_RING.zero for _ in values]
    min_shift = min(p[1] for p in present)
    scale = lcm(*(p[2] for p in present))
    out = [
        _RING.zero if p is None else p[0].mul_monom((p[1] - min_shift,)) * (scale // p[2])
        for p in parts
    ]
    content = gcd(*(int(c.content()) for c in out if c))
    if content > 1:
        out = [c.quo_ground(content) if c else c for c in out]
    return out


ZERO = RatFunc(_ZERO_POLY, canonical=True)
ONE = RatFunc(_ONE_POLY, canonical=True)
Q = q_power(1)
QINV = q_power(-1)
