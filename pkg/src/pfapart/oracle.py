"""Brute-force ground truth by partition enumeration.

Correlation functions, normalizations and partition functions are
computed by summing measure weights over every partition up to a size
cutoff, entirely independent of the kernel/Pfaffian machinery, plus an
identity suite covering the exact structural relations of the measure
families.

Accumulation is deterministic: per-level sums are formed with a single
vectorized pass (fixed enumeration order), then levels are reduced in
increasing order with compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import backend
from .errors import DomainError, TailError
from .measures import (
    PlancherelParams,
    ZMeasureParams,
    hook_determinant_identity,
    level_measure,
    mixed_measure,
    plancherel_mixed,
    plancherel_determinant_form,
    determinant_form_z,
    positive_real_power,
    schur2_determinant_weight,
)
from .partitions import Partition, conjugate, enumerate_partitions, hook_products
from .partitions import generalized_pochhammer
from .pfaffian import CorrelationQuery
from .special_functions import rising_factorial
from .specializations import Specialization

_DECAY_LIMIT = 0.95
_TAIL_LEVELS = 400


@dataclass
class TruncationPolicy:
    """Enumeration cutoff and tail tolerance for brute-force sums.

    level_report is filled by the operations with the per-level absolute
    mass sums of the last run.
    """

    max_size: int = 40
    tol: float = 1e-8
    level_report: dict | None = field(default=None)

    def __post_init__(self):
        if self.max_size < 1:
            raise DomainError("max_size must be >= 1")
        if not self.tol > 0:
            raise DomainError("tol must be positive")


def _level_reduce(sizes, weights, selected, n_levels: int):
    """Signed sums per level then a compensated reduction across levels."""
    re = np.bincount(
        sizes[selected], weights=weights.real[selected], minlength=n_levels + 1
    )
    if np.iscomplexobj(weights):
        im = np.bincount(
            sizes[selected], weights=weights.imag[selected], minlength=n_levels + 1
        )
        return complex(math.fsum(re), math.fsum(im))
    return math.fsum(re)


def _poisson_tail(eta: float, n_cut: int) -> float:
    """Exact tail sum_{n > n_cut} e^{-eta^2} eta^{2n} / n!."""
    lam = float(eta) ** 2
    term = math.exp(-lam)
    for n in range(1, n_cut + 1):
        term *= lam / n
    total = 0.0
    n = n_cut
    while True:
        n += 1
        term *= lam / n
        total += term
        if term < 1e-30 * max(total, 1e-300) or n > n_cut + 500:
            return total


def _z_level_tail(p: ZMeasureParams, n_cut: int) -> float:
    """Heuristic tail: the closed-form level-mass magnitudes
    |(1-xi)^t| xi^n |(t)_n| / n! summed beyond the cutoff.  Not a
    rigorous bound for signed measures; the normalization check of the
    empty query validates it a posteriori."""
    xi = float(p.require_xi())
    t = complex(p.t)
    mass = abs(complex(positive_real_power(1 - xi, t)))
    for n in range(n_cut + 1):
        mass *= xi * abs(t + n) / (n + 1)
    total = 0.0
    for n in range(n_cut + 1, n_cut + 1 + _TAIL_LEVELS):
        total += mass
        mass *= xi * abs(t + n) / (n + 1)
    return total


def _generic_tail(abs_levels: np.ndarray) -> float:
    """Geometric extrapolation of observed absolute level sums."""
    if len(abs_levels) < 4:
        raise TailError("cutoff too small to estimate a tail")
    last3 = abs_levels[-3:]
    scale = float(abs_levels.max(initial=0.0))
    if scale == 0.0 or float(last3.max()) <= 1e-250 * scale:
        return 0.0
    ratios = []
    for a, b in zip(last3[:-1], last3[1:]):
        if a > 0:
            ratios.append(b / a)
    r = max(ratios) if ratios else 1.0
    if not r < _DECAY_LIMIT:
        raise TailError(
            f"absolute level sums are not decaying (ratio ~ {r:.3f}); "
            "increase max_size or treat the sum as divergent"
        )
    return float(last3[-1]) * r / (1.0 - r)


def _node_weights(measure, tbl):
    """Per-node weight array for the array-backed families, or a Python
    callable fallback for a generic specialization."""
    if isinstance(measure, ZMeasureParams):
        if float(measure.theta) != 2.0:
            raise DomainError("the brute-force lattice encoding requires theta = 2")
        xi = float(measure.require_xi())
        poch = backend.pochhammer_pair_products(tbl, measure.z, measure.zp)
        pref = complex(positive_real_power(1 - xi, measure.t))
        w = pref * np.power(xi, tbl.sizes.astype(np.float64)) * poch / tbl.hh
        if abs(complex(measure.z).imag) == 0 and abs(complex(measure.zp).imag) == 0:
            w = w.real
        return w
    if isinstance(measure, PlancherelParams):
        eta2 = float(measure.eta) ** 2
        return (
            math.exp(-eta2)
            * np.power(2.0 * eta2, tbl.sizes.astype(np.float64))
            / tbl.hh
        )
    if isinstance(measure, Specialization):
        w = np.empty(tbl.count, dtype=complex)
        for i in range(tbl.count):
            w[i] = complex(schur2_determinant_weight(measure.e, tbl.parts_of(i)))
        if np.abs(w.imag).max(initial=0.0) == 0.0:
            w = w.real.copy()
        return w
    raise DomainError(f"unsupported measure object {type(measure).__name__}")


def _tail_for(measure, policy, abs_levels) -> float:
    if isinstance(measure, PlancherelParams):
        return _poisson_tail(measure.eta, policy.max_size)
    if isinstance(measure, ZMeasureParams):
        return _z_level_tail(measure, policy.max_size)
    return _generic_tail(abs_levels)


def brute_force_rho(measure, query, policy: TruncationPolicy | None = None):
    """rho(X) = sum of measure weights over partitions whose point
    configuration {lam_i - 2i} contains X, enumerated up to the size
    cutoff.  Returns (value, tail_estimate).

    measure is ZMeasureParams (theta = 2, xi set), PlancherelParams, or
    a Specialization (whose determinant weights are normalized by the
    truncated partition function).  Raises TailError when the tail
    estimate exceeds the policy tolerance.
    """
    policy = policy or TruncationPolicy()
    if not isinstance(query, CorrelationQuery):
        query = CorrelationQuery(tuple(query))
    pts = query.points

    tbl = backend.table(policy.max_size)
    w = _node_weights(measure, tbl)

    if pts:
        lo, hi = pts[0], pts[-1]
        masks = backend.window_masks(tbl, lo, hi)
        qmask = 0
        for x in pts:
            qmask |= 1 << (x - lo)
        selected = (masks & qmask) == qmask
    else:
        selected = np.ones(tbl.count, dtype=bool)

    abs_levels = np.bincount(
        tbl.sizes, weights=np.abs(w), minlength=policy.max_size + 1
    )
    value = _level_reduce(tbl.sizes, w, selected, policy.max_size)

    tail = _tail_for(measure, policy, abs_levels)
    policy.level_report = {"abs_level_sums": abs_levels.tolist(), "tail": tail}

    if isinstance(measure, Specialization):
        z_norm = _level_reduce(tbl.sizes, w, np.ones(tbl.count, dtype=bool), policy.max_size)
        if z_norm == 0:
            raise TailError("truncated partition function vanished; cannot normalize")
        value = value / z_norm

    if tail > policy.tol:
        raise TailError(
            f"tail estimate {tail:.3e} exceeds tolerance {policy.tol:.3e}; "
            "increase max_size"
        )
    return value, tail


def partition_function_schur2(pi: Specialization, policy: TruncationPolicy | None = None):
    """Truncated partition function of the determinant-weighted measure:
    the sum of schur2 determinant weights over all partitions up to the
    cutoff.  O(count x determinant) - meant for modest cutoffs."""
    policy = policy or TruncationPolicy()
    tbl = backend.table(policy.max_size)
    w = _node_weights(pi, tbl)
    abs_levels = np.bincount(
        tbl.sizes, weights=np.abs(w), minlength=policy.max_size + 1
    )
    value = _level_reduce(tbl.sizes, w, np.ones(tbl.count, dtype=bool), policy.max_size)
    tail = _generic_tail(abs_levels)
    policy.level_report = {"abs_level_sums": abs_levels.tolist(), "tail": tail}
    if tail > policy.tol:
        raise TailError(
            f"tail estimate {tail:.3e} exceeds tolerance {policy.tol:.3e}"
        )
    return value


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "max_deviation": c.max_deviation,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name:<34s} {mark}  (max dev {c.max_deviation:.3e})")
        return "\n".join(lines)


def _all_partitions(max_size: int):
    for n in range(max_size + 1):
        yield from enumerate_partitions(n)


def _rel_dev(a, b) -> float:
    a = complex(a)
    b = complex(b)
    return abs(a - b) / max(1.0, abs(a), abs(b))


def identity_suite(max_size: int = 10) -> IdentityReport:
    """Structural identities of the measure families, checked over all
    partitions with |lam| <= max_size; exact rational arithmetic where
    the identity is exact, 1e-12 relative otherwise."""
    checks = []
    lams = list(_all_partitions(max_size))
    two = Fraction(2)
    half = Fraction(1, 2)

    # hook coincidence at theta = 1
    dev = 0.0
    ok = True
    for lam in lams:
        h, hp = hook_products(lam, 1)
        if h != hp:
            ok = False
            dev = max(dev, abs(h - hp))
    checks.append(IdentityCheck("theta_one_hook_coincidence", ok, dev))

    # conjugation symmetry of the hook products: H(lam', 1/2) = 2^-n H'(lam, 2)
    ok = True
    for lam in lams:
        h_conj, _ = hook_products(conjugate(lam), half)
        _, hp = hook_products(lam, two)
        if h_conj != hp * two ** (-lam.size):
            ok = False
    checks.append(IdentityCheck("hook_conjugation", ok, 0.0 if ok else 1.0))

    # pochhammer conjugation: (z)_{lam',1/2} = (-1/2)^n (-2z)_{lam,2}
    z = Fraction(5, 3)
    ok = True
    for lam in lams:
        lhs = generalized_pochhammer(z, conjugate(lam), half)
        rhs = (-half) ** lam.size * generalized_pochhammer(-2 * z, lam, two)
        if lhs != rhs:
            ok = False
    checks.append(IdentityCheck("pochhammer_conjugation", ok, 0.0 if ok else 1.0))

    # level measure conjugation invariance
    zz, zzp = Fraction(5, 2), Fraction(7, 3)
    p_fwd = ZMeasureParams(zz, zzp, two)
    p_conj = ZMeasureParams(-zz / two, -zzp / two, half)
    ok = True
    for lam in lams:
        if lam.size == 0:
            continue
        if level_measure(p_fwd, lam) != level_measure(p_conj, conjugate(lam)):
            ok = False
    checks.append(IdentityCheck("level_conjugation", ok, 0.0 if ok else 1.0))

    # level measures sum to one on each level (exact)
    ok = True
    for n in range(1, max_size + 1):
        total = sum(level_measure(p_fwd, lam) for lam in enumerate_partitions(n))
        if total != 1:
            ok = False
    checks.append(IdentityCheck("level_normalization", ok, 0.0 if ok else 1.0))

    # mixture relation: mixed = (1-xi)^t xi^n (t)_n / n! * level
    pz_exact = ZMeasureParams(4, 3, 2, Fraction(1, 4))
    dev = 0.0
    ok = True
    t = pz_exact.t
    for lam in lams:
        n = lam.size
        pref = (
            positive_real_power(1 - pz_exact.xi, t)
            * pz_exact.xi**n
            * rising_factorial(t, n)
            / math.factorial(n)
        )
        lhs = mixed_measure(pz_exact, lam)
        rhs = pref * (level_measure(pz_exact, lam) if n else 1)
        if lhs != rhs:
            ok = False
    pz_f = ZMeasureParams(2.5, 1.7, 2, 0.3)
    tf = pz_f.t
    for lam in lams:
        n = lam.size
        pref = (
            positive_real_power(1 - 0.3, tf)
            * 0.3**n
            * rising_factorial(tf, n)
            / math.factorial(n)
        )
        lhs = mixed_measure(pz_f, lam)
        rhs = pref * (level_measure(pz_f, lam) if n else 1)
        dev = max(dev, _rel_dev(lhs, rhs))
    ok = ok and dev < 1e-12
    checks.append(IdentityCheck("mixing_relation", ok, dev))

    # per-level mixed masses against the closed form
    dev = 0.0
    for n in range(max_size + 1):
        total = math.fsum(
            mixed_measure(pz_f, lam) for lam in enumerate_partitions(n)
        )
        pref = (
            positive_real_power(1 - 0.3, tf)
            * 0.3**n
            * rising_factorial(tf, n)
            / math.factorial(n)
        )
        dev = max(dev, _rel_dev(total, pref))
    checks.append(IdentityCheck("mixed_level_masses", dev < 1e-12, dev))

    # Plancherel level masses are Poisson weights
    eta = 0.9
    pp = PlancherelParams(eta)
    dev = 0.0
    for n in range(max_size + 1):
        total = math.fsum(
            plancherel_mixed(pp, 2, lam) for lam in enumerate_partitions(n)
        )
        poisson = math.exp(-(eta**2)) * eta ** (2 * n) / math.factorial(n)
        dev = max(dev, _rel_dev(total, poisson))
    checks.append(IdentityCheck("plancherel_level_masses", dev < 1e-12, dev))

    # hook determinant identity, exact rationals
    ok = True
    for lam in lams:
        lhs, rhs = hook_determinant_identity(lam)
        if lhs != rhs:
            ok = False
    checks.append(IdentityCheck("hook_determinant", ok, 0.0 if ok else 1.0))

    # determinant form of the mixed measure, float parameters
    dev = 0.0
    pz = ZMeasureParams(2.5, 1.5, 2, 0.3)
    for lam in lams:
        dev = max(
            dev, _rel_dev(mixed_measure(pz, lam), determinant_form_z(2.5, 0.3, lam))
        )
    checks.append(IdentityCheck("z_specialization_determinant", dev < 1e-12, dev))

    # integer z: exact rational agreement and vanishing beyond two rows
    ok = True
    pz4 = ZMeasureParams(4, 3, 2, Fraction(1, 4))
    for lam in lams:
        a = mixed_measure(pz4, lam)
        b = determinant_form_z(4, Fraction(1, 4), lam)
        if a != b:
            ok = False
        if lam.length > 2 and (a != 0 or b != 0):
            ok = False
    checks.append(IdentityCheck("binomial_specialization_exact", ok, 0.0 if ok else 1.0))

    # Plancherel determinant form: float agreement and exact scaling
    dev = 0.0
    for lam in lams:
        dev = max(
            dev,
            _rel_dev(
                plancherel_mixed(pp, 2, lam), plancherel_determinant_form(eta, lam)
            ),
        )
    ok = dev < 1e-12
    u = Fraction(3, 2)
    for lam in lams:
        lhs = schur2_determinant_weight(
            lambda k: u**k / math.factorial(k), lam
        )
        rhs = u ** (2 * lam.size) * schur2_determinant_weight(
            lambda k: Fraction(1, math.factorial(k)), lam
        )
        if lhs != rhs:
            ok = False
    checks.append(IdentityCheck("plancherel_determinant", ok, dev))

    # degeneration of the z family toward Plancherel
    eta1 = 1.0
    pp1 = PlancherelParams(eta1)
    lams6 = [lam for lam in lams if lam.size <= 6]
    devs = []
    for zval in (50.0, 100.0, 200.0):
        xi = 2.0 * eta1**2 / (zval * (zval - 1.0))
        pzd = ZMeasureParams(zval, zval - 1.0, 2, xi)
        devs.append(
            max(
                abs(complex(mixed_measure(pzd, lam)) - plancherel_mixed(pp1, 2, lam))
                for lam in lams6
            )
        )
    ok = devs[0] > devs[1] > devs[2] and devs[2] < 2e-2
    checks.append(
        IdentityCheck(
            "plancherel_degeneration",
            ok,
            devs[2],
            detail="deviations " + ", ".join(f"{d:.3e}" for d in devs),
        )
    )

    return IdentityReport(tuple(checks))
