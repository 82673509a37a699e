from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from plumbzeta.motivic import (
    ONE,
    ZERO,
    L,
    MotivicPoly,
    NotDivisible,
    divide_by_L_minus_1,
    motive_from_json,
    mp_add,
    mp_mul,
    mp_neg,
    projective_class,
    specialize_L,
)

polys = st.builds(
    MotivicPoly, st.lists(st.integers(-5, 5), max_size=5), st.integers(-3, 3)
)


def test_arithmetic_examples():
    assert mp_mul(L + 1, L - 1) == L**2 - 1
    a = MotivicPoly((3, 0, -1), 2)
    assert mp_add(a, ZERO) == a
    assert mp_mul(1 + L, 1 + L) == MotivicPoly((1, 2, 1))
    assert mp_neg(L) == MotivicPoly((-1,), 1)


def test_normal_form():
    p = MotivicPoly((0, 0, 2, 0), -1)
    assert p.coeffs == (2,) and p.low == 1
    assert MotivicPoly((0, 0)) == ZERO
    assert MotivicPoly((0,), 7).low == 0


def test_division_examples():
    assert divide_by_L_minus_1(L**2 - 1) == L + 1
    for k in range(1, 8):
        assert divide_by_L_minus_1(L**k - 1) == projective_class(k)
    with pytest.raises(NotDivisible):
        divide_by_L_minus_1(L)


def test_specialization_examples():
    assert specialize_L(1 + L + L**2) == 3
    for k in range(1, 6):
        assert specialize_L(L**k - 1) == 0
        assert specialize_L(projective_class(k)) == k


def test_projective_class():
    assert projective_class(1) == ONE
    assert projective_class(2) == 1 + L
    assert projective_class(3) == 1 + L + L**2
    with pytest.raises(ValueError):
        projective_class(0)


def test_rendering_and_json():
    assert str(1 + L + L**2) == "1+L+L^2"
    assert str(L**3 - 2 * L) == "-2*L+L^3"
    assert str(ZERO) == "0"
    p = MotivicPoly((1, -2), -1)
    assert motive_from_json(p.to_json()) == p
    assert motive_from_json(4) == 4


def test_negative_powers():
    assert L**-2 == MotivicPoly((1,), -2)
    assert (L**-2).evaluate(2) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        (1 + L) ** -1


def test_hash_consistent_with_ints():
    assert hash(MotivicPoly((5,))) == hash(5)
    assert hash(ZERO) == hash(0)
    assert {MotivicPoly((2,)): "x"}[2] == "x"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys)
def test_division_inverts_multiplication(q):
    assert divide_by_L_minus_1(q * (L - 1)) == q


@given(polys)
def test_divisibility_criterion(a):
    if specialize_L(a) == 0:
        assert divide_by_L_minus_1(a) * (L - 1) == a
    else:
        with pytest.raises(NotDivisible):
            divide_by_L_minus_1(a)


@given(polys, polys)
def test_specialization_is_a_homomorphism(a, b):
    assert specialize_L(a * b) == specialize_L(a) * specialize_L(b)
    assert specialize_L(a + b) == specialize_L(a) + specialize_L(b)


@given(polys)
def test_substitute_inverse_involution(a):
    assert a.substitute_inverse().substitute_inverse() == a
