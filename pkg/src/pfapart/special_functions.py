"""Scalar special functions used by the closed form kernel routes.

Covers the regularized Gauss hypergeometric function on the negative real
axis, integer order Bessel J, and a two sided Pochhammer shift.  The
hypergeometric evaluator follows the ascending series with a Pfaff
transformation for arguments beyond the unit disk, so the whole negative
semi axis is reachable; regularization (division by Gamma(c)) makes c a
non positive integer harmless.
"""

from __future__ import annotations

import cmath
from numbers import Integral

from scipy.special import jv as _bessel_jv
from scipy.special import rgamma as _scipy_rgamma

from .errors import ConvergenceError, DomainError, PoleError

SERIES_TERM_CAP = 10_000
SERIES_STOP_FACTOR = 1e-17


def rising_factorial(z, n: int):
    """Ordinary Pochhammer symbol z (z+1) ... (z+n-1) for n >= 0.

    Plain products, so the arithmetic follows the type of z (Fraction
    input stays exact, complex works).
    """
    if n < 0:
        raise ValueError("n must be nonnegative; use pochhammer_shift for shifts")
    out = None
    for q in range(n):
        factor = z + q
        out = factor if out is None else out * factor
    if out is None:
        return 1
    return out


def pochhammer_shift(z, m: int):
    """Two sided Pochhammer symbol, the ratio Gamma(z+m)/Gamma(z).

    For m >= 0 this is the rising product z (z+1) ... (z+m-1); for m < 0
    it is 1/((z-1)(z-2)...(z+m)).  Exact products, no gamma function.

    Raises PoleError when the value is genuinely infinite, i.e. a factor
    of the m < 0 denominator vanishes.  A vanishing factor on the m >= 0
    side returns 0 (the reciprocal gamma pole dominates).
    """
    if m >= 0:
        return rising_factorial(z, m)
    denom = None
    for q in range(1, -m + 1):
        factor = z - q
        denom = factor if denom is None else denom * factor
    if denom == 0:
        raise PoleError(f"pochhammer_shift({z!r}, {m}) is infinite")
    one = denom / denom if not isinstance(denom, (int, float, complex)) else 1
    return one / denom


def reciprocal_gamma(c) -> complex:
    """1/Gamma(c), entire in c; exactly 0 at non positive integers."""
    if isinstance(c, Integral) or (isinstance(c, float) and c.is_integer()):
        ci = int(c)
        if ci <= 0:
            return 0j
    if isinstance(c, complex) and c.imag != 0:
        return complex(_scipy_rgamma(c))
    return complex(_scipy_rgamma(float(c.real if isinstance(c, complex) else c)))


def _is_nonpositive_integer(c) -> bool:
    if isinstance(c, complex):
        if c.imag != 0:
            return False
        c = c.real
    return float(c).is_integer() and c <= 0


def _regularized_series(a, b, c, w) -> complex:
    """sum_n (a)_n (b)_n w^n / (n! Gamma(c+n)) by term recurrence.

    Valid for |w| < 1.  When c is a non positive integer the first 1-c
    terms vanish through the reciprocal gamma, so summation starts past
    them with Gamma(1) = 1.
    """
    a = complex(a)
    b = complex(b)
    w = complex(w)
    if _is_nonpositive_integer(c):
        n0 = int(1 - complex(c).real)
        # term at n0: (a)_{n0} (b)_{n0} w^{n0} / (n0! * Gamma(1))
        t = complex(rising_factorial(a, n0)) * complex(rising_factorial(b, n0))
        t *= w**n0
        for q in range(1, n0 + 1):
            t /= q
        n = n0
    else:
        t = reciprocal_gamma(c)
        n = 0
    c = complex(c)
    total = t
    running_max = abs(t)
    small_streak = 0
    while n < SERIES_TERM_CAP:
        t = t * (a + n) * (b + n) * w / ((n + 1) * (c + n))
        total += t
        n += 1
        mag = abs(t)
        if mag > running_max:
            running_max = mag
        if mag < SERIES_STOP_FACTOR * max(running_max, 1e-300):
            small_streak += 1
            if small_streak >= 3:
                return total
        else:
            small_streak = 0
    raise ConvergenceError(
        f"hypergeometric series did not settle within {SERIES_TERM_CAP} terms"
    )


def regularized_2f1(a, b, c, w) -> complex:
    """Regularized Gauss hypergeometric function F(a,b;c;w)/Gamma(c) for
    real w <= 0, defined for every c including non positive integers.

    |w| < 1 uses the ascending series directly.  For w <= -1 the Pfaff
    transformation (1-w)^(-a) F(a, c-b; c; w/(w-1)) maps the argument
    into [1/2, 1) where the series converges; the regularization passes
    through untouched since c is unchanged.
    """
    w = float(w)
    if w > 0:
        raise DomainError("regularized_2f1 is restricted to w <= 0")
    if w == 0.0:
        return reciprocal_gamma(c)
    if abs(w) < 1.0:
        return _regularized_series(a, b, c, w)
    u = w / (w - 1.0)
    prefactor = cmath.exp(-complex(a) * cmath.log(1.0 - w))
    return prefactor * _regularized_series(a, complex(c) - complex(b), c, u)


def bessel_j(n: int, u: float) -> float:
    """Bessel function J_n of integer order, negative orders included
    via J_{-n}(u) = (-1)^n J_n(u)."""
    n = int(n)
    return float(_bessel_jv(n, float(u)))


def bessel_j_many(orders, u: float):
    """J_n(u) for an array of integer orders (vectorized scipy call)."""
    return _bessel_jv(orders, float(u))
