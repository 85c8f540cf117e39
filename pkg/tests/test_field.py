"""Exact scalar arithmetic: construction, canonical forms, field axioms."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dgdeform import GF, QQ, FieldSpec, Scalar
from dgdeform.errors import (
    DenominatorDivisibleByP,
    DivisionByZero,
    FieldMismatch,
    NonPrimeModulus,
    ZeroDenominator,
)


def test_make_reduces_fractions():
    assert QQ.scalar(2, 4) == QQ.scalar(1, 2)
    assert QQ.scalar(2, 4).value == Fraction(1, 2)
    assert QQ.scalar(3, -6).value == Fraction(-1, 2)


def test_make_inverts_denominator_mod_p():
    assert GF(5).scalar(1, 2).value == 3  # 2 * 3 = 1 mod 5


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominator):
        QQ.scalar(1, 0)


def test_denominator_divisible_by_p_rejected():
    with pytest.raises(DenominatorDivisibleByP):
        GF(5).scalar(1, 10)


def test_non_prime_modulus_rejected():
    with pytest.raises(NonPrimeModulus):
        GF(6)
    with pytest.raises(NonPrimeModulus):
        GF(1)


def test_add_rationals():
    assert QQ.scalar(1, 2) + QQ.scalar(1, 3) == QQ.scalar(5, 6)


def test_inverse_mod_p():
    assert GF(7).scalar(3).inv() == GF(7).scalar(5)


def test_inverse_of_zero_rejected():
    with pytest.raises(DivisionByZero):
        QQ.scalar(0).inv()
    with pytest.raises(DivisionByZero):
        GF(5).scalar(5).inv()  # 5 reduces to 0


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        QQ.scalar(1) + GF(5).scalar(1)
    with pytest.raises(FieldMismatch):
        GF(5).scalar(1) * GF(7).scalar(1)


def test_is_zero_via_reduction():
    assert not GF(5).scalar(5)
    assert not QQ.scalar(0, 3)
    assert QQ.scalar(1, 2)


def test_text_form():
    assert str(QQ.scalar(-3, 4)) == "-3/4"
    assert str(QQ.scalar(2)) == "2"
    assert str(GF(5).scalar(-1)) == "4"
    assert QQ.from_string("-3/4") == QQ.scalar(-3, 4)
    assert GF(5).from_string("7") == GF(5).scalar(2)


_FIELDS = [QQ, GF(2), GF(5), GF(101)]


@st.composite
def scalars3(draw):
    field = draw(st.sampled_from(_FIELDS))
    if field.modulus is None:
        nums = st.integers(-30, 30)
        dens = st.integers(1, 12)
        vals = [field.scalar(draw(nums), draw(dens)) for _ in range(3)]
    else:
        vals = [field.scalar(draw(st.integers(0, field.modulus - 1))) for _ in range(3)]
    return vals


@given(scalars3())
def test_field_axioms(vals):
    a, b, c = vals
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == a.field.zero
    if a:
        assert a * a.inv() == a.field.one


@given(scalars3())
def test_canonical_form_is_unique(vals):
    a, b, _ = vals
    # equal values have identical stored representations
    if a == b:
        assert a.value == b.value and type(a.value) is type(b.value)
    if a.field.modulus is None:
        assert a.value.denominator > 0
    else:
        assert 0 <= a.value < a.field.modulus
