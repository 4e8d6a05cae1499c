"""Unit tests for exact arithmetic in Q(q)."""

import random
from fractions import Fraction

import pytest

from ratfunc import (
    ONE,
    Q,
    QINV,
    ZERO,
    ZQ,
    LaurentPoly,
    PoleError,
    RatFunc,
    clear_denominators,
    q_power,
    rf_add,
    rf_eval,
    rf_format,
    rf_inv,
    rf_mul,
    rf_parse,
    rf_pow,
)


def _frac(num: dict, den: dict) -> RatFunc:
    return RatFunc(LaurentPoly(num), LaurentPoly(den))


def _random_ratfunc(rng: random.Random) -> RatFunc:
    num = {rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(3)}
    den = {rng.randint(0, 3): rng.randint(1, 5) for _ in range(2)}
    if not any(den.values()):
        den = {0: 1}
    return _frac(num, den)


def test_add_uses_common_denominator():
    """q + q^-1 = (q^2 + 1)/q."""
    assert rf_add(Q, QINV) == _frac({2: 1, 0: 1}, {1: 1})


def test_add_identity_and_inverse():
    x = _frac({0: 1}, {0: 1, 1: 1})
    assert x + 0 == x
    assert (Q - QINV) + (QINV - Q) == ZERO


def test_mul_expands_and_cancels():
    assert rf_mul(Q - QINV, Q) == q_power(2) - 1
    a = _frac({2: 1, 0: -1}, {1: 1})
    assert a * _frac({1: 1}, {2: 1, 0: -1}) == ONE
    assert a * ONE == a


def test_inverse_clears_negative_exponents():
    assert rf_inv(Q) == QINV
    assert rf_inv(Q - QINV) == _frac({1: 1}, {2: 1, 0: -1})
    assert rf_inv(ONE) == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        rf_inv(ZERO)


def test_eval_substitutes_exactly():
    assert rf_eval(_frac({2: 1, 0: -1}, {1: 1}), Fraction(2)) == Fraction(3, 2)
    assert rf_eval(ZERO, Fraction(7, 3)) == 0


def test_eval_at_pole_raises_pole_error():
    with pytest.raises(PoleError):
        rf_eval(rf_inv(Q - QINV), Fraction(1))
    with pytest.raises(ZeroDivisionError):
        rf_eval(QINV, Fraction(0))


def test_canonical_form_is_unique():
    """Equal values built differently compare and hash equal."""
    a = _frac({2: 2, 0: -2}, {1: 2})
    b = Q - QINV
    assert a == b
    assert hash(a) == hash(b)
    assert a.den.is_one()

    c = _frac({0: 2}, {0: -4, 1: -2})  # 2 / (-4 - 2q) = -1 / (q + 2)
    assert c.den == LaurentPoly({0: 2, 1: 1})
    assert c.num == LaurentPoly({0: -1})


def test_power_handles_negative_exponents():
    assert rf_pow(Q, -3) == q_power(-3)
    assert (Q + 1) ** 2 == q_power(2) + 2 * Q + 1
    assert rf_pow(Q + 1, 0) == ONE


def test_format_then_parse_is_identity():
    for value in (ZERO, ONE, Q - QINV, _frac({0: 1}, {0: 1, 1: 3}), _frac({1: Fraction(1, 2)}, {0: 1})):
        assert rf_parse(rf_format(value)) == value


def test_parse_accepts_non_canonical_input():
    assert rf_parse("( -1 + 1*q^2 ) / ( 1*q )") == Q - QINV


def test_format_keeps_q_power_in_numerator():
    assert rf_format(Q - QINV) == "( -1*q^-1 + 1*q ) / ( 1 )"
    assert rf_parse("( -1 + 1*q^2 ) / ( 1*q )") == rf_parse(rf_format(Q - QINV))


def test_parse_rejects_malformed_strings():
    with pytest.raises(ValueError):
        rf_parse("q + 1")
    with pytest.raises(ValueError):
        rf_parse("( 1*x ) / ( 1 )")


def test_field_axioms_on_random_inputs():
    rng = random.Random(11)
    for _ in range(20):
        a, b, c = (_random_ratfunc(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * rf_inv(a) == ONE


def test_evaluation_is_a_ring_homomorphism():
    rng = random.Random(5)
    point = Fraction(7, 3)
    for _ in range(10):
        a, b = _random_ratfunc(rng), _random_ratfunc(rng)
        try:
            lhs = rf_eval(a * b, point)
            rhs = rf_eval(a, point) * rf_eval(b, point)
        except PoleError:
            continue
        assert lhs == rhs


def test_clear_denominators_scales_to_integer_polynomials():
    cleared = clear_denominators([QINV, ZERO])
    assert cleared == [ZQ.one, ZQ.zero]

    halves = clear_denominators([Q * Fraction(1, 2), Q * 3])
    assert [int(c.LC) for c in halves] == [1, 6]
    assert all(c.degree() == 0 for c in halves)
