import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uhankel.errors import DomainError, OrderMismatchError, SingularityError
from uhankel.series import (
    TruncatedSeries,
    series_compose,
    series_mul,
    series_reciprocal,
    series_revert,
)

from conftest import random_complex

coef = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)


def convolve_loop(a, b):
    n = len(a) - 1
    out = [0j] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += a[i] * b[j]
    return out


def compose_naive(outer, inner):
    """sum_k outer_k * inner^k with explicit repeated products."""
    n = outer.order
    acc = TruncatedSeries.zero(n)
    power = TruncatedSeries.one(n)
    for k in range(n + 1):
        acc = acc + outer[k] * power
        power = series_mul(power, inner)
    return acc


def test_mul_difference_of_squares():
    a = TruncatedSeries.from_coeffs([1, 1], 3)
    b = TruncatedSeries.from_coeffs([1, -1], 3)
    assert series_mul(a, b).allclose(TruncatedSeries.from_coeffs([1, 0, -1], 3), atol=0)


def test_mul_by_zero():
    f = TruncatedSeries.normalized([2, 3 + 1j], 4)
    assert series_mul(f, TruncatedSeries.zero(4)).allclose(TruncatedSeries.zero(4), atol=0)


def test_mul_matches_double_loop(rng):
    for _ in range(20):
        a, b = random_complex(rng, 9), random_complex(rng, 9)
        got = series_mul(TruncatedSeries(a), TruncatedSeries(b)).coeffs
        np.testing.assert_allclose(got, convolve_loop(a, b), atol=1e-14)


def test_mul_order_mismatch():
    with pytest.raises(OrderMismatchError):
        series_mul(TruncatedSeries.zero(3), TruncatedSeries.zero(4))


def test_compose_identity_inner_and_outer():
    f = TruncatedSeries.from_coeffs([0, 1, 1], 5)
    assert series_compose(f, TruncatedSeries.identity(5)).allclose(f, atol=0)
    g = TruncatedSeries.from_coeffs([0, 1, 0, 1], 5)
    assert series_compose(TruncatedSeries.identity(5), g).allclose(g, atol=0)


def test_compose_matches_power_summation(rng):
    for _ in range(20):
        f = TruncatedSeries.normalized(random_complex(rng, 7), 8)
        g = TruncatedSeries.normalized(random_complex(rng, 7), 8)
        assert series_compose(f, g).max_abs_diff(compose_naive(f, g)) < 1e-12


def test_compose_rejects_constant_term():
    with pytest.raises(DomainError):
        series_compose(TruncatedSeries.identity(3), TruncatedSeries.from_coeffs([1, 1], 3))


def test_revert_identity():
    assert series_revert(TruncatedSeries.identity(6)).allclose(TruncatedSeries.identity(6), atol=0)


def test_revert_geometric():
    f = TruncatedSeries.from_coeffs([0, 1, 1, 1, 1, 1], 5)
    g = series_revert(f)
    assert g.allclose(TruncatedSeries.from_coeffs([0, 1, -1, 1, -1, 1], 5), atol=1e-15)
    assert series_compose(f, g).allclose(TruncatedSeries.identity(5), atol=1e-15)


def test_revert_rejects_unnormalized():
    with pytest.raises(DomainError):
        series_revert(TruncatedSeries.from_coeffs([0, 2, 1], 4))
    with pytest.raises(DomainError):
        series_revert(TruncatedSeries.from_coeffs([0.1, 1, 1], 4))


def test_reciprocal_geometric_and_one():
    q = series_reciprocal(TruncatedSeries.from_coeffs([1, -1], 6))
    assert q.allclose(TruncatedSeries.from_coeffs([1] * 7, 6), atol=0)
    assert series_reciprocal(TruncatedSeries.one(4)).allclose(TruncatedSeries.one(4), atol=0)


def test_reciprocal_two_factor_product():
    lam = 0.5
    p = TruncatedSeries.from_coeffs([1, -(1 + lam), lam], 4)
    q = series_reciprocal(p)
    np.testing.assert_allclose(q.coeffs, [1, 1.5, 1.75, 1.875, 1.9375], atol=1e-15)
    assert series_mul(p, q).allclose(TruncatedSeries.one(4), atol=1e-15)


def test_reciprocal_singular():
    with pytest.raises(SingularityError):
        series_reciprocal(TruncatedSeries.identity(3))


def test_immutable():
    f = TruncatedSeries.identity(3)
    with pytest.raises(ValueError):
        f.coeffs[0] = 5


def _series(draw_list):
    return TruncatedSeries.normalized(draw_list, 8)


@settings(max_examples=200, deadline=None)
@given(st.lists(coef, min_size=7, max_size=7))
def test_round_trip_and_involution(tail):
    f = _series(tail)
    g = series_revert(f)
    assert series_compose(f, g).max_abs_diff(TruncatedSeries.identity(8)) <= 1e-10
    assert series_revert(g).max_abs_diff(f) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(*(st.lists(coef, min_size=9, max_size=9) for _ in range(3)))
def test_mul_commutative_associative(a, b, c):
    a, b, c = (TruncatedSeries(x) for x in (a, b, c))
    assert series_mul(a, b).max_abs_diff(series_mul(b, a)) <= 1e-12
    assert series_mul(series_mul(a, b), c).max_abs_diff(series_mul(a, series_mul(b, c))) <= 1e-12
