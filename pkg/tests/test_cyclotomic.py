import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from semisine.cyclotomic import (ONE, ZERO, CycNum, cyclotomic_polynomial, parse_cycnum,
                                 root_of_unity, to_float, totient)


def test_basic_arithmetic_examples():
    z4 = root_of_unity(4, 1)
    assert z4 * z4 == -1
    assert CycNum(Fraction(1, 2)) + CycNum(Fraction(1, 2)) == 1
    z3 = root_of_unity(3, 1)
    assert z3 + z3 * z3 == -1


def test_root_of_unity_examples():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(2, 1) == -1
    assert root_of_unity(6, 3) == -1
    assert root_of_unity(6, 3).conductor == 1
    assert root_of_unity(12, 4) == root_of_unity(3, 1)
    assert root_of_unity(5, 0) == ONE


def test_to_float_examples():
    assert to_float(ONE) == 1 + 0j
    assert abs(to_float(root_of_unity(4, 1)) - 1j) < 1e-15
    assert abs(to_float(root_of_unity(3, 1)) - complex(-0.5, math.sqrt(3) / 2)) < 1e-15


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        root_of_unity(5, 2) / (root_of_unity(5, 2) - root_of_unity(5, 2))


def test_canonical_form_equal_values_identical():
    # 1 + z_3 = -z_3^2 = z_6 (reduced to the least field containing it)
    a = 1 + root_of_unity(3, 1)
    b = -root_of_unity(3, 2)
    c = root_of_unity(6, 1)
    assert a == b == c
    assert (a.conductor, a.coeffs) == (b.conductor, b.coeffs) == (c.conductor, c.coeffs)
    assert hash(a) == hash(c)
    assert hash(CycNum(3)) == hash(3)


def test_conductor_drops_for_real_subfield_elements():
    z8 = root_of_unity(8, 1)
    sqrt2 = z8 - z8 ** 3
    assert sqrt2 * sqrt2 == 2
    i = root_of_unity(4, 1)
    assert (z8 ** 2) == i and (z8 ** 2).conductor == 4


def test_string_form_and_parse_roundtrip():
    v = 1 - Fraction(1, 2) * root_of_unity(4, 1)
    assert str(v) == "1 - 1/2*z_4^1"
    assert parse_cycnum(str(v)) == v
    assert parse_cycnum("z_4") == root_of_unity(4, 1)
    assert parse_cycnum("-2") == -2
    with pytest.raises(ValueError):
        parse_cycnum("")
    with pytest.raises(ValueError):
        parse_cycnum("1 2")


def test_cyclotomic_polynomial_and_totient():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    for n in range(1, 25):
        assert len(cyclotomic_polynomial(n)) - 1 == totient(n)
        # every primitive n-th root is a numeric root of Phi_n
        w = cmath.exp(2j * math.pi / n)
        val = sum(c * w ** k for k, c in enumerate(cyclotomic_polynomial(n)))
        assert abs(val) < 1e-9


def test_galois_conjugate_and_powers():
    z5 = root_of_unity(5, 1)
    assert z5 ** 5 == 1
    assert z5 ** -1 == z5 ** 4 == z5.conjugate()
    assert z5.galois(2) == z5 ** 2
    with pytest.raises(ValueError):
        z5.galois(5)


# property tests -----------------------------------------------------------

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 12, 24]
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cycnums(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    k = draw(st.integers(0, 3))
    terms = {draw(st.integers(0, n - 1)): draw(small_q) for _ in range(k)}
    return CycNum.from_terms(n, terms)


@settings(max_examples=150, deadline=None)
@given(cycnums(), cycnums(), cycnums())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a + ZERO == a and a * ONE == a
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@settings(max_examples=150, deadline=None)
@given(cycnums(), cycnums())
def test_to_float_is_a_homomorphism(a, b):
    fa, fb = to_float(a), to_float(b)
    assert abs(to_float(a + b) - (fa + fb)) < 1e-10
    assert abs(to_float(a - b) - (fa - fb)) < 1e-10
    assert abs(to_float(a * b) - fa * fb) < 1e-10
    assume(abs(fb) > 1e-3)
    assert abs(to_float(a / b) - fa / fb) < 1e-8 * max(1.0, abs(fa / fb))


@settings(max_examples=100, deadline=None)
@given(cycnums())
def test_canonicalization_idempotent(a):
    again = CycNum.from_terms(a.conductor, dict(enumerate(a.coeffs)))
    assert (again.conductor, again.coeffs) == (a.conductor, a.coeffs)
    lifted = CycNum.from_terms(24 * a.conductor // math.gcd(24, a.conductor),
                               {k * (24 // math.gcd(24, a.conductor)): c for k, c in enumerate(a.coeffs)})
    assert lifted == a and lifted.conductor == a.conductor
    assert parse_cycnum(str(a)) == a


@settings(max_examples=100, deadline=None)
@given(cycnums(), cycnums())
def test_equality_iff_numeric_equal(a, b):
    assert (a == b) == (abs(to_float(a) - to_float(b)) < 1e-9)
