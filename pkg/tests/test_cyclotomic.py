import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sctkit.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi, mobius

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12]


@st.composite
def cyclotomics(draw, conductor=None):
    e = conductor or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=e, max_size=e))
    return Cyclotomic.from_exponent_counts(e, coeffs)


def close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


def test_phi_and_mobius():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_sum_to_zero():
    for e in (2, 3, 5, 6, 8):
        total = sum((Cyclotomic.zeta(e, k) for k in range(e)), Cyclotomic.rational(0))
        assert total == 0


def test_sqrt_minus_three():
    w = Cyclotomic.zeta(3)
    s = w - w.conjugate()
    assert s * s == -3
    assert not s.is_rational()


def test_lift_keeps_value():
    i4 = Cyclotomic.zeta(4)
    assert i4.lift(12) == i4
    assert i4 == Cyclotomic.zeta(12, 3)
    assert hash(i4.lift(8)) == hash(i4)


def test_rational_conversion():
    x = Cyclotomic.rational(Fraction(7, 3))
    assert x.is_rational() and x.to_fraction() == Fraction(7, 3)
    assert not x.is_integer()
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3).to_fraction()


def test_json_round_trip():
    x = Cyclotomic.zeta(5, 2) * Fraction(3, 4) + 1
    assert Cyclotomic.from_json(x.to_json()) == x


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cyclotomics(), cyclotomics())
def test_matches_complex_values(a, b):
    assert close(a * b, complex(a) * complex(b))
    assert close(a + b, complex(a) + complex(b))
    assert close(a.conjugate(), complex(a).conjugate())


@given(cyclotomics(), st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool))
def test_rational_division_inverts_multiplication(a, r):
    assert (a * r) / r == a
    assert (a * r) / Cyclotomic.rational(r) == a


def test_division_by_irrational_is_refused():
    with pytest.raises(TypeError):
        Cyclotomic.rational(1) / Cyclotomic.zeta(3)


@given(st.sampled_from([5, 8, 12]), st.data())
def test_galois_action_is_a_ring_map(e, data):
    a = data.draw(cyclotomics(e))
    b = data.draw(cyclotomics(e))
    k = data.draw(st.sampled_from([k for k in range(1, e) if math.gcd(k, e) == 1]))
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    assert a.galois(e - 1) == a.conjugate()


@given(cyclotomics())
def test_abs2_is_nonnegative_real(a):
    n = a.abs2()
    assert close(n, abs(complex(a)) ** 2)
    assert abs(complex(n).imag) < 1e-9


def test_normalized_trace():
    assert Cyclotomic.zeta(5).normalized_trace() == Fraction(-1, 4)
    assert Cyclotomic.rational(3).normalized_trace() == 3
    assert close(Cyclotomic.zeta(7, 3), cmath.exp(2j * cmath.pi * 3 / 7))
