from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lievariety import chow, discover
from lievariety.chow import TruncatedSeries
from lievariety.groebner import buchberger
from lievariety.hilbert import hilbert_polynomial

x, y = TruncatedSeries.x(), TruncatedSeries.y()

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
grids = st.lists(st.lists(coeff, min_size=4, max_size=4), min_size=4, max_size=4)
series = grids.map(TruncatedSeries)
units = series.filter(lambda s: s[0, 0] != 0)


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + 0 == a and a * 1 == a


@given(units)
def test_inverse_random_units(s):
    assert s * s.inverse() == 1


def test_inverse_examples():
    assert (1 - x).inverse() == 1 + x + x ** 2 + x ** 3
    assert TruncatedSeries.const(1).inverse() == 1
    s_m = (1 + y - 2 * x).inverse()
    assert s_m * (1 + y - 2 * x) == 1
    assert s_m[1, 0] == 2 and s_m[0, 1] == -1 and s_m[1, 1] == -4


def test_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        (x + y).inverse()


def test_truncation():
    assert x ** 4 == 0 and y ** 4 == 0
    assert (x ** 3 * y ** 3)[3, 3] == 1
    assert x ** 2 * x ** 2 == 0


def test_powers_match_repeated_products():
    s = 1 - y
    prod = TruncatedSeries.const(1)
    for _ in range(17):
        prod = prod * s
    assert s ** 17 == prod
    assert s ** -2 == (s * s).inverse()


def test_degree_c1():
    assert chow.segre_c1().univariate() == [1, 7, 25, 55]
    assert chow.degree_c1() == 55


def test_c2_factors():
    s_m, s_v, s_w = chow.segre_factors_c2()
    assert all(s_v[i, j] == 0 for i in range(1, 4) for j in range(4))
    assert s_w.univariate() == [1, 3, 3, 1]
    assert s_w.univariate() == ((1 + x) ** 3).univariate()


def test_degree_c2():
    s5 = chow.segre_c2().homogeneous_part(5)
    support = {(i, j) for i in range(4) for j in range(4) if s5[i, j]}
    assert support <= {(2, 3), (3, 2)}
    assert chow.degree_c2() == 361
    assert s5[2, 3] + s5[3, 2] == 361


def test_homogeneous_part():
    s = (1 + x + y) ** 6
    assert s.homogeneous_part(0) == 1
    assert s.homogeneous_part(1) == 6 * (x + y)
    total = sum((s.homogeneous_part(d) for d in range(7)), TruncatedSeries())
    assert total == s
    assert isinstance(s[2, 1], Fraction)


@pytest.mark.parametrize("component, degree", [(1, chow.degree_c1), (2, chow.degree_c2)])
def test_segre_degrees_match_hilbert_polynomials(component, degree):
    hp = hilbert_polynomial(buchberger(discover.minimal_generators(component, 3)))
    assert hp.dim == 11 and hp.degree == degree()
