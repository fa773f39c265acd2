"""Scalar kernel S(x,y) on the shifted lattice, by three routes, plus the
finite-rank inverse-matrix kernel.

Routes
------
contour        tensor-product trapezoid quadrature of the double contour
               integral, with adaptive node doubling;
upsilon_series the bilinear sign-coupled series over coefficient functions
               Phi_k obtained from single-contour quadrature;
closed_form    the same series with Phi_k from special functions
               (hypergeometric for the z family, Bessel for Plancherel).

All routes share the antisymmetry S(x,y) = -S(y,x); route agreement on
grids is the main correctness property and is exercised by the tests.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceWarning,
    DomainError,
    QuadratureError,
    SingularMatrixError,
)
from .measures import PlancherelParams, ZMeasureParams, positive_real_power
from .special_functions import bessel_j_many, pochhammer_shift, regularized_2f1
from .specializations import Specialization, e_ratio, pi_plancherel, pi_z

_SERIES_STEP = 16
_SERIES_CAP = 512
_SERIES_BLOCK_TOL = 1e-13
_COND_LIMIT = 1e14
_GRID_CACHE_LIMIT = 1024
_CHUNK = 256


@dataclass(frozen=True)
class QuadratureSettings:
    """Contour quadrature controls.

    radius/radius2 of None means the family default; node counts double
    adaptively from start_nodes until successive grids agree to tol.
    """

    radius: float | None = None
    radius2: float | None = None
    start_nodes: int = 64
    max_nodes: int = 4096
    tol: float = 1e-12

    def __post_init__(self):
        if self.start_nodes < 8:
            raise DomainError("start_nodes must be at least 8")
        if self.max_nodes < self.start_nodes:
            raise DomainError("max_nodes must be >= start_nodes")
        if not self.tol > 0:
            raise DomainError("tol must be positive")


def upsilon(k: int, m: int) -> int:
    """Sign coupling between series indices k, m >= 1: -1 when k is odd
    and m is a larger even index, +1 when k is even and m is a smaller
    odd index, else 0.  Antisymmetric by construction."""
    if k < 1 or m < 1:
        raise DomainError("indices must be >= 1")
    if k % 2 == 1 and m % 2 == 0 and m > k:
        return -1
    if k % 2 == 0 and m % 2 == 1 and k > m:
        return 1
    return 0


class UpsilonEntry(NamedTuple):
    """One materialized entry of the sign-coupling rule."""

    k: int
    m: int
    value: int

    @classmethod
    def at(cls, k: int, m: int) -> "UpsilonEntry":
        return cls(k, m, upsilon(k, m))


def _sign_coupled_sum(a: np.ndarray, b: np.ndarray):
    """sum_{k,m=1..K} upsilon(k,m) a_k b_m in O(K).

    a, b are 0-indexed arrays holding terms for k = 1..K.  The odd-k
    terms pair with the even-index tail sums of b, the even-k terms with
    the odd-index head sums, mirroring the two geometric families of the
    closed form.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    K = a.shape[-1]
    m = np.arange(1, K + 1)
    b_even = np.where(m % 2 == 0, b, 0)
    b_odd = np.where(m % 2 == 1, b, 0)
    # suffix_even[j] = sum of b_even over indices > j (1-based strict)
    suffix_even = np.cumsum(b_even[..., ::-1], axis=-1)[..., ::-1]
    # prefix_odd[j] = sum of b_odd over indices < j
    prefix_odd = np.cumsum(b_odd, axis=-1) - b_odd
    odd_k = m % 2 == 1
    total = -(np.where(odd_k, a, 0) * suffix_even).sum(axis=-1)
    total = total + (np.where(~odd_k, a, 0) * prefix_odd).sum(axis=-1)
    return total


def upsilon_bilinear(w1: complex, w2: complex, truncation: int) -> complex:
    """Truncated double series sum_{k,m} upsilon(k,m) w1^{-k} w2^{-m},
    valid for |w1|, |w2| > 1."""
    if abs(w1) <= 1 or abs(w2) <= 1:
        raise DomainError("bilinear series needs |w1| > 1 and |w2| > 1")
    if truncation < 1:
        raise DomainError("truncation must be >= 1")
    k = np.arange(1, truncation + 1)
    a = np.asarray(w1, dtype=complex) ** (-k)
    b = np.asarray(w2, dtype=complex) ** (-k)
    return complex(_sign_coupled_sum(a, b))


def upsilon_bilinear_closed(w1: complex, w2: complex) -> complex:
    """Closed form of the bilinear series:
    w1 w2 (w2 - w1) / ((w1 w2 - 1)(w1^2 - 1)(w2^2 - 1))."""
    if abs(w1) <= 1 or abs(w2) <= 1:
        raise DomainError("closed form valid for |w1| > 1 and |w2| > 1")
    num = w1 * w2 * (w2 - w1)
    den = (w1 * w2 - 1) * (w1 * w1 - 1) * (w2 * w2 - 1)
    return num / den


# ---------------------------------------------------------------------------
# ratio evaluators: E(w) / E(1/w) along quadrature nodes
# ---------------------------------------------------------------------------


def _ratio_z(z, xi: float, w: np.ndarray) -> np.ndarray:
    """(1 + sqrt(xi) w)^{-z} (1 + sqrt(xi)/w)^{z}, principal branches."""
    sq = math.sqrt(xi)
    base1 = 1 + sq * w
    base2 = 1 + sq / w
    for base in (base1, base2):
        bad = (base.real <= 0) & (np.abs(base.imag) < 1e-12)
        if bad.any():
            raise QuadratureError("quadrature node touches the branch cut")
    return np.exp(complex(z) * (np.log(base2) - np.log(base1)))


def _ratio_plancherel(eta: float, w: np.ndarray) -> np.ndarray:
    u = math.sqrt(2.0) * eta
    return np.exp(u * (w - 1.0 / w))


def _ratio_generic(pi: Specialization, w: np.ndarray) -> np.ndarray:
    return np.array([e_ratio(pi, complex(v)) for v in w], dtype=complex)


def _default_radius(annulus) -> float:
    lo, hi = annulus
    if math.isinf(hi):
        return 2.0
    return math.sqrt(hi)


def _check_radius(r: float, annulus) -> float:
    lo, hi = annulus
    if not 1 < r < hi:
        raise DomainError(
            f"contour radius {r} outside admissible interval (1, {hi})"
        )
    return float(r)


# ---------------------------------------------------------------------------
# coefficient functions Phi
# ---------------------------------------------------------------------------


def _laurent_coefficients(ratio_fn, annulus, s_values: np.ndarray, quad: QuadratureSettings):
    """Adaptive trapezoid extraction of Laurent coefficients [w^s] of the
    ratio on a circle inside the annulus, for all integer s at once."""
    r = quad.radius if quad.radius is not None else _default_radius(annulus)
    r = _check_radius(r, annulus)
    s_values = np.asarray(s_values, dtype=np.int64)
    nodes = quad.start_nodes
    prev = None
    while True:
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        w = r * np.exp(1j * theta)
        coeff = np.fft.fft(ratio_fn(w)) / nodes
        vals = np.asarray(r, dtype=float) ** (-s_values.astype(float))
        vals = vals * coeff[np.mod(s_values, nodes)]
        if prev is not None:
            err = np.abs(vals - prev)
            scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
            if err.max(initial=0.0) <= quad.tol * scale:
                return vals, err
        if nodes >= quad.max_nodes:
            raise QuadratureError(
                f"coefficient quadrature did not stabilize at {nodes} nodes"
            )
        prev = vals
        nodes *= 2


def phi_contour(pi: Specialization, k: int, x: int, quad: QuadratureSettings | None = None) -> complex:
    """Phi_k(x) = [w^{k+x}] E(w)/E(1/w) for the given specialization,
    by adaptive circle quadrature; independent of the admissible radius."""
    if k < 1:
        raise DomainError("k must be >= 1")
    quad = quad or QuadratureSettings()
    vals, _ = _laurent_coefficients(
        lambda w: _ratio_generic(pi, w), pi.annulus, np.array([k + x]), quad
    )
    return complex(vals[0])


def phi_closed_form_z(z, xi: float, k: int, x: int) -> complex:
    """Closed form of Phi_k(x) for the z family at Jack parameter 2:

        (-1)^s xi^{s/2} (1-xi)^z (z)_s 2F1~(-z+1, -z; s+1; xi/(xi-1))

    with s = k + x and the regularized hypergeometric."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if not 0 < xi < 1:
        raise DomainError(f"xi must lie in (0,1), got {xi}")
    s = k + x
    sign = -1.0 if s % 2 else 1.0
    value = sign * math.exp(0.5 * s * math.log(xi))
    value = value * positive_real_power(1 - xi, z)
    value = value * pochhammer_shift(z, s)
    value = value * regularized_2f1(-z + 1, -z, s + 1, xi / (xi - 1))
    return complex(value)


# ---------------------------------------------------------------------------
# the scalar kernel
# ---------------------------------------------------------------------------

_ROUTES = ("contour", "upsilon_series", "closed_form")


class ScalarKernel:
    """S(x,y) evaluator for one parameter family and one route.

    params is ZMeasureParams (requires theta = 2, zp = z - 1, xi set),
    PlancherelParams, or a raw Specialization (contour/series routes
    only).  Phi values and quadrature grids are memoized per instance;
    the caches are guarded by a lock so grid evaluations can be
    dispatched concurrently.
    """

    def __init__(self, params, route: str = "contour", quad: QuadratureSettings | None = None):
        if route not in _ROUTES:
            raise DomainError(f"unknown route {route!r}; expected one of {_ROUTES}")
        self.route = route
        self.params = params
        self.quad = quad or QuadratureSettings()
        self._lock = threading.Lock()
        self._phi_cache: dict[int, complex] = {}
        self._grid_cache: dict[tuple, np.ndarray] = {}

        if isinstance(params, ZMeasureParams):
            z = params.z
            if abs(complex(params.zp) - (complex(z) - 1)) > 1e-12 * max(1.0, abs(complex(z))):
                raise DomainError("kernel requires zp = z - 1")
            if float(params.theta) != 2.0:
                raise DomainError("kernel requires theta = 2")
            xi = params.require_xi()
            self.family = "z"
            self._z = complex(z)
            self._xi = float(xi)
            self._pi = pi_z(-self._z, self._xi)
        elif isinstance(params, PlancherelParams):
            self.family = "plancherel"
            self._eta = float(params.eta)
            self._pi = pi_plancherel(self._eta)
        elif isinstance(params, Specialization):
            if route == "closed_form":
                raise DomainError(
                    "closed_form route exists only for the named families"
                )
            self.family = "generic"
            self._pi = params
        else:
            raise DomainError(f"unsupported parameter object {type(params).__name__}")

    # -- ratio along nodes ---------------------------------------------

    def _ratio(self, w: np.ndarray) -> np.ndarray:
        if self.family == "z":
            return _ratio_z(self._z, self._xi, w)
        if self.family == "plancherel":
            return _ratio_plancherel(self._eta, w)
        return _ratio_generic(self._pi, w)

    def _radii(self) -> tuple[float, float]:
        annulus = self._pi.annulus
        r1 = self.quad.radius if self.quad.radius is not None else _default_radius(annulus)
        r2 = self.quad.radius2 if self.quad.radius2 is not None else r1
        return _check_radius(r1, annulus), _check_radius(r2, annulus)

    # -- contour route ---------------------------------------------------

    def _coupling_grid(self, nodes: int, r1: float, r2: float) -> np.ndarray:
        key = (nodes, r1, r2)
        with self._lock:
            cached = self._grid_cache.get(key)
        if cached is not None:
            return cached
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        w1 = r1 * np.exp(1j * theta)
        w2 = r2 * np.exp(1j * theta)
        g = (w2[None, :] - w1[:, None]) / (
            (w1[:, None] * w2[None, :] - 1.0)
            * (w1 * w1 - 1.0)[:, None]
            * (w2 * w2 - 1.0)[None, :]
        )
        if nodes <= _GRID_CACHE_LIMIT:
            with self._lock:
                self._grid_cache[key] = g
        return g

    def _contour_once(self, xs, ys, nodes: int, r1: float, r2: float) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        w1 = r1 * np.exp(1j * theta)
        w2 = r2 * np.exp(1j * theta)
        u = self._ratio(w1)[None, :] * w1[None, :] ** (1 - xs[:, None]) / nodes
        v = self._ratio(w2)[None, :] * w2[None, :] ** (1 - ys[:, None]) / nodes
        if nodes <= _GRID_CACHE_LIMIT:
            return u @ self._coupling_grid(nodes, r1, r2) @ v.T
        out = np.zeros((len(xs), len(ys)), dtype=complex)
        for lo in range(0, nodes, _CHUNK):
            hi = min(lo + _CHUNK, nodes)
            g = (w2[None, :] - w1[lo:hi, None]) / (
                (w1[lo:hi, None] * w2[None, :] - 1.0)
                * (w1[lo:hi] * w1[lo:hi] - 1.0)[:, None]
                * (w2 * w2 - 1.0)[None, :]
            )
            out += u[:, lo:hi] @ (g @ v.T)
        return out

    def _contour_table(self, xs, ys):
        r1, r2 = self._radii()
        nodes = self.quad.start_nodes
        prev = None
        while True:
            cur = self._contour_once(xs, ys, nodes, r1, r2)
            if prev is not None:
                err = np.abs(cur - prev)
                scale = max(1.0, float(np.abs(cur).max(initial=0.0)))
                if err.max(initial=0.0) <= self.quad.tol * scale:
                    return cur, err
            if nodes >= self.quad.max_nodes:
                raise QuadratureError(
                    f"double-contour quadrature did not stabilize at {nodes} nodes"
                )
            prev = cur
            nodes *= 2

    # -- series routes ----------------------------------------------------

    def _phi_closed_many(self, s_values: np.ndarray) -> np.ndarray:
        if self.family == "plancherel":
            return np.asarray(
                bessel_j_many(s_values, 2.0 * math.sqrt(2.0) * self._eta),
                dtype=complex,
            )
        out = np.empty(len(s_values), dtype=complex)
        for i, s in enumerate(s_values):
            # reuse phi_closed_form_z with k=1, x=s-1 (depends on s only)
            out[i] = phi_closed_form_z(self._z, self._xi, 1, int(s) - 1)
        return out

    def _phi_values(self, s_values: np.ndarray) -> np.ndarray:
        """Memoized Phi coefficients f(s) = Phi_k(x) at s = k + x."""
        s_values = np.asarray(s_values, dtype=np.int64)
        with self._lock:
            missing = sorted({int(s) for s in s_values} - self._phi_cache.keys())
        if missing:
            ms = np.asarray(missing, dtype=np.int64)
            if self.route == "closed_form":
                vals = self._phi_closed_many(ms)
            else:
                vals, _ = _laurent_coefficients(
                    self._ratio, self._pi.annulus, ms, self.quad
                )
            with self._lock:
                for s, v in zip(missing, vals):
                    self._phi_cache[s] = complex(v)
        with self._lock:
            return np.array([self._phi_cache[int(s)] for s in s_values], dtype=complex)

    def _series_table(self, xs, ys, truncation: int | None):
        adaptive = truncation is None
        cap = _SERIES_CAP if adaptive else truncation
        k_max = _SERIES_STEP if adaptive else truncation
        prev = None
        while True:
            k = np.arange(1, k_max + 1)
            a = self._phi_values((xs[:, None] + k[None, :]).ravel()).reshape(len(xs), k_max)
            b = self._phi_values((ys[:, None] + k[None, :]).ravel()).reshape(len(ys), k_max)
            m = k
            b_even = np.where(m % 2 == 0, b, 0)
            b_odd = np.where(m % 2 == 1, b, 0)
            suffix_even = np.cumsum(b_even[:, ::-1], axis=1)[:, ::-1]
            prefix_odd = np.cumsum(b_odd, axis=1) - b_odd
            # w encodes the parity split: odd k pairs with minus the even
            # tail of b, even k with the odd head of b
            w = np.where(m % 2 == 1, -suffix_even, prefix_odd)
            cur = a @ w.T
            if not adaptive:
                return cur, np.full(cur.shape, np.nan)
            if prev is not None:
                err = np.abs(cur - prev)
                scale = max(1.0, float(np.abs(cur).max(initial=0.0)))
                if err.max(initial=0.0) <= _SERIES_BLOCK_TOL * scale:
                    return cur, err
                if k_max >= cap:
                    warnings.warn(
                        f"bilinear series still moving at truncation {k_max}",
                        ConvergenceWarning,
                        stacklevel=3,
                    )
                    return cur, err
            prev = cur
            k_max = min(k_max + _SERIES_STEP, cap)

    # -- public API -------------------------------------------------------

    def table_with_error(self, xs, ys, truncation: int | None = None):
        """S on the grid xs x ys plus a per-entry error estimate
        (quadrature doubling gap or last series block)."""
        xs = np.asarray(list(xs), dtype=np.int64)
        ys = np.asarray(list(ys), dtype=np.int64)
        if self.route == "contour":
            return self._contour_table(xs, ys)
        return self._series_table(xs, ys, truncation)

    def table(self, xs, ys) -> np.ndarray:
        return self.table_with_error(xs, ys)[0]

    def evaluate(self, x: int, y: int) -> complex:
        return complex(self.table([x], [y])[0, 0])


def s_contour(params, x: int, y: int, quad: QuadratureSettings | None = None) -> complex:
    """S(x,y) by double contour quadrature."""
    return ScalarKernel(params, "contour", quad).evaluate(x, y)


def s_series(params, x: int, y: int, truncation: int | None = None) -> complex:
    """S(x,y) by the sign-coupled bilinear series with quadrature Phi;
    truncation of None selects adaptive deepening."""
    kern = ScalarKernel(params, "upsilon_series")
    val, _ = kern.table_with_error([x], [y], truncation)
    return complex(val[0, 0])


@dataclass(frozen=True)
class MatrixKernel2x2:
    """The 2x2 block K(x,y) = [[S(x+1,y+1), -S(x+1,y)],
    [-S(x,y+1), S(x,y)]]."""

    x: int
    y: int
    entries: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def assemble_k(kernel: ScalarKernel, x: int, y: int) -> MatrixKernel2x2:
    """Assemble the 2x2 matrix kernel block at (x, y) from one scalar
    kernel table evaluation."""
    t = kernel.table([x + 1, x], [y + 1, y])
    entries = np.array(
        [[t[0, 0], -t[0, 1]], [-t[1, 0], t[1, 1]]], dtype=complex
    )
    return MatrixKernel2x2(x, y, entries)


# ---------------------------------------------------------------------------
# finite-rank kernel from the 2N-point ensembles
# ---------------------------------------------------------------------------


def _e_values(pi: Specialization, top: int) -> np.ndarray:
    """Coefficients e_0..e_L as a complex vector, with L at least top and
    extended until the tail is negligible (or the exact support end)."""
    if pi.finite_support is not None:
        top = pi.finite_support
        return np.array([complex(pi.e(k)) for k in range(top + 1)], dtype=complex)
    vals = [complex(pi.e(k)) for k in range(top + 1)]
    biggest = max(abs(v) for v in vals)
    level = top
    while level < top + 600:
        level += 1
        v = complex(pi.e(level))
        vals.append(v)
        biggest = max(biggest, abs(v))
        if abs(v) < 1e-18 * max(biggest, 1e-300):
            break
    return np.array(vals, dtype=complex)


def e_toeplitz(pi: Specialization, size: int) -> np.ndarray:
    """T[i,k] = e_{k-i} for i,k = 1..size (zero below the diagonal band)."""
    e = _e_values(pi, size)
    idx = np.arange(1, size + 1)
    d = idx[None, :] - idx[:, None]
    out = np.zeros((size, size), dtype=complex)
    ok = (d >= 0) & (d < len(e))
    out[ok] = e[d[ok]]
    return out


def difference_matrix(size: int) -> np.ndarray:
    """D[k,m] = 1 if m = k+1, -1 if m = k-1, else 0 (k,m = 1..size)."""
    d = np.zeros((size, size))
    for k in range(size - 1):
        d[k, k + 1] = 1.0
        d[k + 1, k] = -1.0
    return d


def finite_n_matrix(pi: Specialization, n: int) -> np.ndarray:
    """The 2N x 2N antisymmetric pairing matrix with entries
    sum_l (e_{l+i+1} e_{l+j} - e_{l+j+1} e_{l+i}), lattice sum over l.

    Toeplitz in i-j: entry (i,j) equals A(i-j+1) - A(j-i+1) with
    A(d) = sum_m e_m e_{m+d}."""
    if n < 1:
        raise DomainError("n must be >= 1")
    size = 2 * n
    e = _e_values(pi, 2 * size)
    acorr = np.array(
        [np.dot(e[: len(e) - d], e[d:]) for d in range(size + 2)], dtype=complex
    )

    def a(d: int) -> complex:
        return acorr[abs(d)]

    g = np.array([a(d + 1) - a(1 - d) for d in range(-size + 1, size)], dtype=complex)
    idx = np.arange(size)
    return g[(idx[:, None] - idx[None, :]) + size - 1]


def finite_n_kernel(pi: Specialization, n: int, x: int, y: int) -> complex:
    """S^(N)(x,y) = v_x^T M(N)^{-1} v_y with v_x[i] = e_{x+i}; converges
    to the contour/series kernel as N grows.

    The load vector pairs with the second row of the block structure
    (the same shift bookkeeping that turns S into the four entries of
    the matrix kernel), which fixes the index as x+i rather than x+i+1.
    """
    m = finite_n_matrix(pi, n)
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise SingularMatrixError(
            f"pairing matrix at N={n} is numerically singular (cond ~ {cond:.3e})"
        )
    size = 2 * n
    e = _e_values(pi, size + max(abs(x), abs(y)) + 2)

    def load(pt: int) -> np.ndarray:
        v = np.zeros(size, dtype=complex)
        for i in range(1, size + 1):
            k = pt + i
            if 0 <= k < len(e):
                v[i - 1] = e[k]
        return v

    vx = load(x)
    vy = load(y)
    return complex(vx @ np.linalg.solve(m, vy))
