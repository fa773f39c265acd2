"""Hypergeometric, Bessel, and pochhammer helpers."""

import math

import numpy as np
import pytest
from scipy.special import gamma as _gamma

from pfapart import (
    PoleError,
    bessel_j,
    bessel_j_many,
    pochhammer_shift,
    reciprocal_gamma,
    regularized_2f1,
    rising_factorial,
)


def direct_2f1_regularized(a, b, c, w, terms=300):
    """Plain series sum_k (a)_k (b)_k / (k! Gamma(c+k)) w^k for |w| < 1.

    When c is a nonpositive integer the first 1-c terms vanish through
    the reciprocal gamma, so the sum starts at k0 = 1-c."""
    k0 = 0
    if float(c).is_integer() and c <= 0:
        k0 = int(1 - c)
    term = (
        rising_factorial(a, k0)
        * rising_factorial(b, k0)
        * w**k0
        / math.factorial(k0)
        * reciprocal_gamma(c + k0)
    )
    total = 0.0 + 0.0j
    for k in range(k0, k0 + terms):
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1.0) and k > k0 + 10:
            break
        term *= (a + k) * (b + k) * w / ((k + 1) * (c + k))
    return total


def test_rising_factorial_basic():
    assert rising_factorial(3, 0) == 1
    assert rising_factorial(3, 4) == 3 * 4 * 5 * 6
    assert rising_factorial(-2, 3) == 0
    assert rising_factorial(0.5, 2) == pytest.approx(0.75)


def test_pochhammer_shift_negative_steps():
    # Gamma(z+m)/Gamma(z) for m < 0 is 1 / (z-1)(z-2)...(z+m)
    z = 5.5
    assert pochhammer_shift(z, -3) == pytest.approx(1 / ((z - 1) * (z - 2) * (z - 3)))
    with pytest.raises(PoleError):
        pochhammer_shift(2, -3)  # hits the factor z - 2 = 0


def test_pochhammer_shift_matches_gamma_ratio():
    for z, m in [(2.5, 4), (2.5, -2), (1.3 + 0.7j, 5), (4.0, 0)]:
        expected = _gamma(z + m) / _gamma(z)
        assert pochhammer_shift(z, m) == pytest.approx(expected, rel=1e-12)


def test_reciprocal_gamma_at_poles_and_integers():
    assert reciprocal_gamma(0) == 0
    assert reciprocal_gamma(-3) == 0
    assert reciprocal_gamma(1) == pytest.approx(1.0)
    assert reciprocal_gamma(4) == pytest.approx(1 / 6)
    assert reciprocal_gamma(0.5) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-13)


def test_regularized_2f1_trivial_points():
    # at w=0 the series collapses to 1/Gamma(c)
    assert regularized_2f1(1.5, -2.5, 3.0, 0.0) == pytest.approx(reciprocal_gamma(3.0))
    # a=0 freezes the series at its first term
    assert regularized_2f1(0.0, 4.2, 2.5, -0.7) == pytest.approx(reciprocal_gamma(2.5))


def test_regularized_2f1_against_direct_series():
    cases = [
        (-1.5, -2.5, 3.0, -0.25),
        (0.7, 1.2, 2.2, -0.4),
        (2.5, -1.5, 0.5, -0.8),
        (-2.0, 3.5, 1.5, -0.6),  # terminating
    ]
    for a, b, c, w in cases:
        got = regularized_2f1(a, b, c, w)
        want = direct_2f1_regularized(a, b, c, w)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-14)


def test_regularized_2f1_nonpositive_integer_c():
    # 2F1-regularized stays finite at c = 0, -1, ...: the first 1-c terms
    # drop out and the series restarts at k = 1-c
    a, b, w = 1.3, -0.7, -0.35
    for c in (0, -1, -2):
        got = regularized_2f1(a, b, c, w)
        want = direct_2f1_regularized(a, b, c, w)
        assert got == pytest.approx(want, rel=1e-11, abs=1e-14)


def test_bessel_parity_and_recurrence():
    u = 2 * math.sqrt(2) * 1.7
    for n in range(-6, 7):
        assert bessel_j(-n, u) == pytest.approx((-1) ** n * bessel_j(n, u), rel=1e-12, abs=1e-15)
    # three-term recurrence J_{n-1} + J_{n+1} = (2n/u) J_n
    for n in range(-4, 5):
        lhs = bessel_j(n - 1, u) + bessel_j(n + 1, u)
        assert lhs == pytest.approx(2 * n / u * bessel_j(n, u), rel=1e-10, abs=1e-13)


def test_bessel_generating_function():
    # sum_n J_n(u) t^n = exp(u/2 (t - 1/t))
    u, t = 2 * math.sqrt(2), 1.7
    total = sum(bessel_j(n, u) * t**n for n in range(-40, 41))
    assert total == pytest.approx(math.exp(u / 2 * (t - 1 / t)), rel=1e-12)


def test_bessel_many_matches_scalar():
    u = 1.9
    orders = list(range(-7, 8))
    many = bessel_j_many(orders, u)
    for n, v in zip(orders, many):
        assert v == pytest.approx(bessel_j(n, u), rel=1e-13, abs=1e-300)


def test_bessel_at_zero_argument():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(3, 0.0) == 0.0
    assert bessel_j(-2, 0.0) == 0.0
