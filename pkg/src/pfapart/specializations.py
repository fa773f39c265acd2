"""Specializations of the algebra of symmetric functions.

A specialization is determined here by the values it assigns to the
elementary symmetric functions e_k; the generating series
E(w) = 1 + sum_k e_k w^k then has a closed analytic evaluator on a
declared annulus.  Two named constructions are provided (the binomial
one behind the z-measures and the exponential one behind Poissonized
Plancherel) plus a generic finite-support loader.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import DomainError

_CUT_CLEARANCE = 1e-12


def principal_power(base: complex, expo) -> complex:
    """base**expo on the principal branch, rejecting bases on the cut.

    The kernel contours are chosen so the power bases stay away from
    (-inf, 0]; this guard turns a silent branch crossing into an error.
    """
    base = complex(base)
    distance = abs(base) if base.real >= 0.0 else abs(base.imag)
    if distance <= _CUT_CLEARANCE:
        raise DomainError(f"power base {base} sits on the branch cut (-inf, 0]")
    return cmath.exp(complex(expo) * cmath.log(base))


@dataclass(frozen=True, eq=False)
class Specialization:
    """Values of a specialization pi on the elementary generators.

    ``e_coeff(k)`` returns pi(e_k) for k >= 0 (use :meth:`e` for the
    two sided convention e_k = 0 at k < 0); ``E_eval`` evaluates the
    generating series on the open annulus ``annulus[0] < |w| <
    annulus[1]``.  Instances are immutable; evaluators must be pure.
    """

    label: str
    annulus: tuple[float, float]
    e_coeff: Callable[[int], complex]
    E_eval: Callable[[complex], complex]
    finite_support: int | None = field(default=None)

    def e(self, k: int):
        """pi(e_k) with the convention e_0 = 1 and e_k = 0 for k < 0."""
        if k < 0:
            return 0
        return self.e_coeff(k)

    def contains_radius(self, r: float) -> bool:
        return self.annulus[0] < r < self.annulus[1]

    def __repr__(self) -> str:
        return f"Specialization({self.label})"


def pi_z(z, xi, sqrt_xi=None) -> Specialization:
    """The binomial specialization: e_k = xi^(k/2) * C(z, k), with
    generating series E(w) = (1 + sqrt(xi) w)^z on |w| < xi^(-1/2).

    ``sqrt_xi`` may be supplied explicitly (e.g. a Fraction when xi is a
    perfect rational square) so that e_coeff stays exact; by default it
    is the float square root.  Valid annulus: (sqrt(xi), 1/sqrt(xi)).
    """
    if not 0 < float(xi) < 1:
        raise DomainError(f"xi must lie in (0,1), got {xi}")
    sq = math.sqrt(float(xi)) if sqrt_xi is None else sqrt_xi

    def e_coeff(k: int):
        if k < 0:
            return 0
        out = sq**k
        for q in range(k):
            out = out * (z - q) / (q + 1)
        return out

    def E_eval(w: complex) -> complex:
        return principal_power(1.0 + complex(sq) * complex(w), z)

    r = math.sqrt(float(xi))
    support = None
    if isinstance(z, int) or (isinstance(z, float) and z.is_integer() and z > 0):
        support = int(z) if z > 0 else None
    return Specialization(
        label=f"pi_z(z={z}, xi={xi})",
        annulus=(r, 1.0 / r),
        e_coeff=e_coeff,
        E_eval=E_eval,
        finite_support=support,
    )


def pi_plancherel(eta: float) -> Specialization:
    """The exponential specialization: e_k = (sqrt(2) eta)^k / k!,
    E(w) = exp(sqrt(2) eta w); valid on 0 < |w| < infinity."""
    eta = float(eta)
    if eta == 0.0:
        raise DomainError("eta must be nonzero")
    u = math.sqrt(2.0) * eta

    def e_coeff(k: int):
        if k < 0:
            return 0
        return u**k / math.factorial(k)

    def E_eval(w: complex) -> complex:
        return cmath.exp(u * complex(w))

    return Specialization(
        label=f"pi_plancherel(eta={eta})",
        annulus=(0.0, math.inf),
        e_coeff=e_coeff,
        E_eval=E_eval,
    )


def from_e_coefficients(coeffs, label: str = "generic") -> Specialization:
    """Generic finite-support specialization from a list of e_k values.

    ``coeffs[k]`` is pi(e_k); coeffs[0] must equal 1.  E(w) is then a
    polynomial, evaluated by Horner's rule, valid on 0 < |w| < infinity
    (the reciprocal-argument series E(1/w) may still vanish at isolated
    points; e_ratio reports those as ZeroDivisionError).
    """
    vals = [complex(c) for c in coeffs]
    if not vals or vals[0] != 1:
        raise DomainError("e-coefficient list must start with e_0 = 1")

    def e_coeff(k: int):
        if 0 <= k < len(vals):
            return vals[k]
        return 0j

    def E_eval(w: complex) -> complex:
        w = complex(w)
        acc = 0j
        for c in reversed(vals):
            acc = acc * w + c
        return acc

    return Specialization(
        label=label,
        annulus=(0.0, math.inf),
        e_coeff=e_coeff,
        E_eval=E_eval,
        finite_support=len(vals) - 1,
    )


def load_specialization(path: str) -> Specialization:
    """Load a generic specialization from a JSON file.

    The file holds a list of e_k coefficients, each a number or a
    [re, im] pair: ``[1, 0.3, [0.05, 0.01]]``.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise DomainError("specialization file must contain a JSON list")
    coeffs = []
    for item in raw:
        if isinstance(item, list):
            if len(item) != 2:
                raise DomainError(f"complex entries need [re, im], got {item}")
            coeffs.append(complex(float(item[0]), float(item[1])))
        else:
            coeffs.append(complex(float(item)))
    return from_e_coefficients(coeffs, label=f"generic({path})")


def e_ratio(pi: Specialization, w: complex) -> complex:
    """The ratio E(w)/E(1/w) under pi, the integrand weight of the
    contour representations.  w must lie in the annulus of pi."""
    w = complex(w)
    r = abs(w)
    if not pi.contains_radius(r):
        raise DomainError(f"|w| = {r} outside annulus {pi.annulus} of {pi.label}")
    num = pi.E_eval(w)
    den = pi.E_eval(1.0 / w)
    if abs(den) < 1e-300:
        raise ZeroDivisionError(f"E(1/w) vanishes at w = {w} for {pi.label}")
    return num / den


def inverse_e_coefficients(pi: Specialization, K: int) -> list[complex]:
    """First K+1 coefficients of the reciprocal series 1/E(w).

    Standard power series inversion around e_0 = 1: the convolution of
    the result with the e-coefficients reproduces (1, 0, 0, ...).  These
    coefficients realize the inverse of the unit-diagonal Toeplitz
    matrix built from the e-sequence.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    e0 = complex(pi.e(0))
    if e0 != 1:
        raise DomainError("reciprocal series requires e_0 = 1")
    c = [1 + 0j]
    for k in range(1, K + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += complex(pi.e(j)) * c[k - j]
        c.append(-acc)
    return c
