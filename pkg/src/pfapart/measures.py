"""Measures on partitions: z-measure levels, their xi-mixtures, the
Poissonized Plancherel family, and the determinantal rewritings that hold
at Jack parameter 2.

All evaluators are plain arithmetic over the hook and Pochhammer products
from :mod:`pfapart.partitions`, so Fraction parameters give exact values;
floats and complex parameters follow the usual semantics.  Mixture
prefactors (1-xi)^t use the principal power of the positive real base.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

import numpy as np

from .errors import DomainError, PoleError
from .partitions import Partition, generalized_pochhammer, hook_products
from .special_functions import rising_factorial


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _exact_number(x) -> bool:
    return isinstance(x, (Integral, Fraction)) and not isinstance(x, bool)


def _integer_value(expo):
    """The exact integer an exponent represents, else None."""
    if isinstance(expo, Integral):
        return int(expo)
    if isinstance(expo, Fraction):
        return int(expo) if expo.denominator == 1 else None
    if isinstance(expo, float):
        return int(expo) if expo.is_integer() else None
    if isinstance(expo, complex):
        if expo.imag == 0 and expo.real.is_integer():
            return int(expo.real)
        return None
    return None


def positive_real_power(base, expo):
    """base**expo for a positive real base.

    Integer exponents keep the arithmetic of the base (exact for
    Fractions); otherwise the principal power exp(expo * log base).
    """
    if not float(base) > 0:
        raise DomainError(f"base must be positive, got {base}")
    n = _integer_value(expo)
    if n is not None:
        return base**n
    e = complex(expo)
    if e.imag == 0:
        return math.exp(e.real * math.log(float(base)))
    return cmath.exp(e * math.log(float(base)))


@dataclass(frozen=True)
class ZMeasureParams:
    """Parameters (z, z', theta, xi) of the z-measure family.

    ``xi`` is None for pure level measures.  The mixture parameter t is
    always derived as z z' / theta, never stored.
    """

    z: complex
    zp: complex
    theta: float = 2
    xi: float | None = None

    def __post_init__(self):
        if not float(self.theta) > 0:
            raise DomainError(f"theta must be positive, got {self.theta}")
        if self.xi is not None and not 0 < float(self.xi) < 1:
            raise DomainError(f"xi must lie in (0,1), got {self.xi}")

    @property
    def t(self):
        if all(_exact_number(v) for v in (self.z, self.zp, self.theta)):
            return Fraction(self.z) * Fraction(self.zp) / Fraction(self.theta)
        return self.z * self.zp / self.theta

    def require_xi(self):
        if self.xi is None:
            raise DomainError("this operation needs the mixture parameter xi")
        return self.xi


@dataclass(frozen=True)
class PlancherelParams:
    """Poissonized Plancherel parameter eta (nonzero real)."""

    eta: float

    def __post_init__(self):
        if complex(self.eta).imag != 0:
            raise DomainError("eta must be real")
        if float(self.eta) == 0.0:
            raise DomainError("eta must be nonzero")


def level_measure(p: ZMeasureParams, lam) -> complex:
    """Measure of lam within its level n = |lam|:

        n! (z)_lam (z')_lam / ((t)_n H(lam) H'(lam)),   t = z z' / theta.

    The empty partition has measure 1 by convention.  Raises PoleError
    when (t)_n vanishes (t a non positive integer > -n).
    """
    lam = _as_partition(lam)
    n = lam.size
    if n == 0:
        return 1
    tn = rising_factorial(p.t, n)
    if tn == 0:
        raise PoleError(f"(t)_n vanishes for t = {p.t}, n = {n}")
    h, hp = hook_products(lam, p.theta)
    num = math.factorial(n) * generalized_pochhammer(p.z, lam, p.theta)
    num = num * generalized_pochhammer(p.zp, lam, p.theta)
    return num / (tn * h * hp)


def mixed_measure(p: ZMeasureParams, lam) -> complex:
    """The xi-mixture over all levels:

        (1-xi)^t  xi^{|lam|}  (z)_lam (z')_lam / (H(lam) H'(lam)).
    """
    lam = _as_partition(lam)
    xi = p.require_xi()
    h, hp = hook_products(lam, p.theta)
    value = positive_real_power(1 - xi, p.t) * xi ** lam.size
    value = value * generalized_pochhammer(p.z, lam, p.theta)
    value = value * generalized_pochhammer(p.zp, lam, p.theta)
    return value / (h * hp)


def plancherel_mixed(p: PlancherelParams, theta, lam):
    """Poissonized Plancherel measure with deformation theta:

        exp(-eta^2) (eta^2 theta)^{|lam|} / (H(lam) H'(lam)).

    Strictly positive; level masses are Poisson(eta^2) weights.
    """
    lam = _as_partition(lam)
    if not float(theta) > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    h, hp = hook_products(lam, theta)
    eta2 = float(p.eta) ** 2
    return math.exp(-eta2) * (eta2 * theta) ** lam.size / (h * hp)


def _exact_det(rows):
    """Determinant by fraction Gaussian elimination (exact)."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                row_r = m[r]
                row_c = m[col]
                for c in range(col, n):
                    row_r[c] -= factor * row_c[c]
    return det


def schur2_determinant_weight(e_value, lam):
    """The paired-column determinant weight built from a coefficient
    stream e_value(k) (treated as 0 for k < 0):

        det over rows i = 1..2l of columns, for each j = 1..l, the pair
        e_value(lam_j - 2j + i + 1), e_value(lam_j - 2j + i).

    The empty partition gives 1.  Exact (Fraction) entries are resolved
    with exact elimination; anything else goes through a complex
    determinant.
    """
    lam = _as_partition(lam)
    l = lam.length
    if l == 0:
        return 1
    size = 2 * l

    def entry(k):
        return e_value(k) if k >= 0 else 0

    rows = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, l + 1):
            base = lam.part(j) - 2 * j + i
            row.append(entry(base + 1))
            row.append(entry(base))
        rows.append(row)

    if all(_exact_number(x) or isinstance(x, Fraction) for row in rows for x in row):
        return _exact_det(rows)
    return complex(np.linalg.det(np.asarray(rows, dtype=np.complex128)))


def _inverse_factorial(k: int, exact: bool):
    if k < 0:
        return 0
    if exact:
        return Fraction(1, math.factorial(k))
    return 1.0 / math.factorial(k)


def hook_determinant_identity(lam):
    """Both sides of the exact identity

        1/(H(lam,2) H'(lam,2)) = det[paired-column 1/(lam_j-2j+i+1)!, 1/(lam_j-2j+i)!],

    as exact rationals: (lhs, rhs)."""
    lam = _as_partition(lam)
    h, hp = hook_products(lam, Fraction(2))
    lhs = Fraction(1) / (h * hp)
    rhs = schur2_determinant_weight(lambda k: _inverse_factorial(k, True), lam)
    return lhs, rhs


def determinant_form_z(z, xi, lam):
    """The determinantal form of the mixed measure at z' = z-1, theta = 2:

        (1-xi)^{z(z-1)/2} xi^{|lam|} (z)_lam (z-1)_lam
            * det[paired-column 1/(...)!].

    Equals mixed_measure(ZMeasureParams(z, z-1, 2, xi), lam); exact for
    rational z, xi with an integral exponent z(z-1)/2.
    """
    lam = _as_partition(lam)
    exact = _exact_number(z) and _exact_number(xi)
    expo = z * (z - 1) / 2 if not exact else Fraction(z) * (Fraction(z) - 1) / 2
    pref = positive_real_power(1 - xi, expo)
    det = schur2_determinant_weight(lambda k: _inverse_factorial(k, exact), lam)
    value = pref * xi ** lam.size
    value = value * generalized_pochhammer(z, lam, 2)
    value = value * generalized_pochhammer(z - 1, lam, 2)
    return value * det


def plancherel_determinant_form(eta: float, lam):
    """Determinantal form of the Plancherel measure at theta = 2:

        exp(-eta^2) det[paired-column (sqrt(2) eta)^m / m!]

    with m the usual shifted indices and terms 0 for m < 0."""
    lam = _as_partition(lam)
    u = math.sqrt(2.0) * float(eta)

    def e_value(k):
        return u**k / math.factorial(k) if k >= 0 else 0.0

    det = schur2_determinant_weight(e_value, lam)
    return math.exp(-float(eta) ** 2) * det
