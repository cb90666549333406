import random
from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from vertexlab.exact import (GenPoly, I, LaurentPoly, T, Y, det_exact, eval_poly, interpolate,
                             max_denominator, pfaffian, random_rational, scalar)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
nonzero = rationals.filter(lambda f: f != 0)


@given(rationals, rationals, rationals)
def test_scalar_field_matches_fractions(a, b, c):
    lhs = (scalar(a) + scalar(b)) * scalar(c) - scalar(a) * scalar(c)
    assert lhs == scalar(b * c)
    assert lhs.to_rational() == mpq(b * c)


@given(nonzero, rationals)
def test_scalar_division_inverts_multiplication(a, b):
    x = scalar(b) + scalar(a) * I
    assert (x * scalar(a)) / scalar(a) == x
    assert x / x == scalar(1)


def test_imaginary_unit():
    assert I * I == scalar(-1)
    assert (scalar(2) + I) * (scalar(2) - I) == scalar(5)
    assert (scalar("3/2") * I).to_complex() == 1.5j


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(rows):
    expected = sympy.Matrix(rows).det()
    assert Fraction(str(det_exact([[mpq(v) for v in r] for r in rows]))) == Fraction(str(expected))


@given(st.integers(2, 3), st.data())
def test_pfaffian_squared_is_det(half, data):
    n = 2 * half
    M = [[mpq(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = mpq(data.draw(rationals))
            M[i][j], M[j][i] = v, -v
    assert pfaffian(M) ** 2 == det_exact(M)


def test_pfaffian_example():
    M = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
    assert pfaffian(M) == 1 * 6 - 2 * 5 + 3 * 4


def test_bareiss_on_polynomial_entries():
    M = [[1 + T, T], [Y, 2 + Y]]
    assert det_exact(M) == (1 + T) * (2 + Y) - T * Y


@given(st.lists(rationals, min_size=1, max_size=6))
def test_interpolation_recovers_polynomial(coeffs):
    pts = [(x, eval_poly([mpq(c) for c in coeffs], mpq(x))) for x in range(len(coeffs))]
    expected = [mpq(c) for c in coeffs]
    while len(expected) > 1 and not expected[-1]:
        expected.pop()
    assert interpolate(pts) == expected


def test_genpoly_arithmetic():
    p = (T + 1) ** 2
    assert p == T ** 2 + 2 * T + 1
    assert p.exact_div(T + 1) == T + 1
    assert p.evaluate(t=1) == 4
    assert str(GenPoly.constant(1) + T) == "1 + t"


def test_laurent_symmetric():
    q = LaurentPoly.var()
    x = q + LaurentPoly.monomial(mpq(1), -1)
    assert x * x == q * q + 2 + LaurentPoly.monomial(mpq(1), -2)


def test_random_rational_rejections():
    rng = random.Random(5)
    for _ in range(200):
        v = random_rational(rng, bound=3, avoid=[mpq(1, 2)])
        assert v not in (1, -1, mpq(1, 2))
        assert abs(v.numerator) <= 3 and v.denominator <= 3


def test_max_denominator_env(monkeypatch):
    assert max_denominator() == 10 ** 4
    monkeypatch.setenv("VERTEXLAB_MAX_DENOM", "7")
    assert max_denominator() == 7
    rng = random.Random(0)
    assert all(random_rational(rng).denominator <= 7 for _ in range(50))


def test_random_rational_reproducible():
    a = [random_rational(random.Random("s")) for _ in range(3)]
    b = [random_rational(random.Random("s")) for _ in range(3)]
    assert a == b


def test_positive_draws():
    rng = random.Random(2)
    assert all(random_rational(rng, positive=True) > 0 for _ in range(50))


def test_bad_scalar():
    with pytest.raises((ValueError, TypeError)):
        scalar("not a number")
