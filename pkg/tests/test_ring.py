import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbskein.ring import LOOP, ONE, Q_HALF, QBAR_HALF, ZERO, LaurentScalar, SpecializationError

Q = LaurentScalar.q_half(2)
QBAR = LaurentScalar.q_half(-2)
QQ = Q + QBAR  # q + q^-1

scalars = st.builds(
    LaurentScalar,
    st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=4),
    st.integers(0, 2),
)
points = st.sampled_from([Fraction(2), Fraction(-1), Fraction(3, 2), Fraction(-2, 5), Fraction(1, 3)])


def test_inverse_pair():
    assert Q_HALF * QBAR_HALF == ONE


def test_loop_plus_its_negative():
    assert LOOP + QQ == ZERO
    assert (LOOP + QQ).is_zero()


def test_square_of_q_plus_qbar():
    assert QQ * QQ == LaurentScalar({4: 1, 0: 2, -4: 1})


def test_divide_loop_examples():
    assert (LaurentScalar({4: 1, -4: -1})).divide_loop(1) == Q - QBAR
    assert QQ.divide_loop(1) == ONE
    x = ONE.divide_loop(1)
    assert x.numerator == {0: 1} and x.denom_pow == 1


def test_specialize_examples():
    assert LOOP.specialize(-1) == -2
    assert (Q - QBAR).specialize(-1) == 0
    assert (Q_HALF + QBAR_HALF).specialize(-1) == -2


def test_specialize_illegal_point():
    with pytest.raises(SpecializationError):
        ONE.specialize(0)
    # q + q^-1 never vanishes at a rational point; only a zero argument is illegal
    assert ONE.divide_loop(2).specialize(1) == Fraction(1, 4)


def test_canonical_zero():
    z = LaurentScalar({}, 3)
    assert z == ZERO and z.denom_pow == 0
    assert LaurentScalar({2: 1, -2: 1}, 1) == ONE


def _divisible_by_loop(num):
    """Long division of the numerator (a polynomial in s = q^(1/2)) by s^4 + 1."""
    lo = min(num)
    coeffs = {e - lo: c for e, c in num.items()}
    top = max(coeffs)
    while top >= 4:
        c = coeffs.pop(top)
        coeffs[top - 4] = coeffs.get(top - 4, 0) - c
        coeffs = {e: v for e, v in coeffs.items() if v}
        if not coeffs:
            return True
        top = max(coeffs)
    return not coeffs


def _value(x, at):
    return x.specialize(at)


@settings(max_examples=1000, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=300, deadline=None)
@given(scalars, st.integers(1, 3))
def test_divide_loop_inverts_multiplication(a, k):
    assert a.divide_loop(k) * QQ ** k == a
    assert (a * QQ ** k).divide_loop(k) == a


@settings(max_examples=500, deadline=None)
@given(scalars, scalars, points)
def test_specialize_is_homomorphism(a, b, at):
    # the rational evaluation is an independent model of the ring operations
    assert _value(a + b, at) == _value(a, at) + _value(b, at)
    assert _value(a * b, at) == _value(a, at) * _value(b, at)


@settings(max_examples=200, deadline=None)
@given(scalars)
def test_canonical_form_unique(a):
    # numerator is not divisible by q + q^-1 when there is a denominator
    if a.denom_pow:
        assert not _divisible_by_loop(a.numerator)
        again = LaurentScalar(a.numerator, a.denom_pow)
        assert again == a and again.terms == a.terms
    assert LaurentScalar.from_json(json.loads(json.dumps(a.to_json()))) == a


@settings(max_examples=200, deadline=None)
@given(scalars, points)
def test_bar_is_involution(a, at):
    assert a.bar().bar() == a
    assert a.bar().specialize(at) == a.specialize(1 / at)


def test_json_shape():
    x = LaurentScalar({1: 2, -3: -1}, 1)
    assert x.to_json() == {"terms": [[-3, -1], [1, 2]], "denom_pow": 1}


def test_string_forms():
    assert str(ZERO) == "0"
    assert str(Q_HALF) == "q^{1/2}"
    assert str(LOOP) == "-q - q^-1"
    assert "(q+q^-1)" in str(ONE.divide_loop(1))
