"""Pfaffians of even-order antisymmetric complex matrices and the
assembly of correlation values from 2x2 kernel blocks.

The Pfaffian uses skew-symmetric Gaussian elimination with pivoting
(Parlett-Reid style), O(n^3), normalized so Pf([[0,a],[-a,0]]) = a and
Pf of the empty matrix is 1.  A recursive cofactor expansion is kept as
an independent oracle for small orders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetryError, DomainError, OddOrderError

_ASYM_TOL = 1e-10


class AntisymmetricMatrix:
    """Validated carrier of an even-order antisymmetric matrix.

    Construction enforces max |a_ij + a_ji| below 1e-10 of the largest
    entry magnitude (hard error otherwise: asymmetry this large means an
    upstream evaluation bug, not noise), then canonicalizes to exactly
    (A - A^T)/2 with a zero diagonal.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        if n % 2 != 0:
            raise OddOrderError(f"antisymmetric order must be even, got {n}")
        if n:
            scale = float(np.abs(a).max())
            gap = float(np.abs(a + a.T).max())
            if gap > _ASYM_TOL * max(scale, 1e-300):
                raise AsymmetryError(
                    f"antisymmetry violated: max |a_ij + a_ji| = {gap:.3e} "
                    f"against scale {scale:.3e}"
                )
        a = (a - a.T) / 2
        np.fill_diagonal(a, 0.0)
        a.setflags(write=False)
        self.entries = a

    @property
    def order(self) -> int:
        return self.entries.shape[0]


def _as_canonical(a) -> np.ndarray:
    if isinstance(a, AntisymmetricMatrix):
        return a.entries
    return AntisymmetricMatrix(a).entries


def pfaffian(a) -> complex:
    """Pfaffian by skew-symmetric elimination with pivoting.

    Accepts an AntisymmetricMatrix or anything its constructor takes.
    """
    m = _as_canonical(a).copy()
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    value = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        # largest available pivot in column k below the diagonal
        col = np.abs(m[k + 1 :, k])
        p = k + 1 + int(np.argmax(col))
        if m[p, k] == 0:
            return 0.0 + 0.0j
        if p != k + 1:
            m[[k + 1, p], :] = m[[p, k + 1], :]
            m[:, [k + 1, p]] = m[:, [p, k + 1]]
            value = -value
        pivot = m[k, k + 1]
        value *= pivot
        if k + 2 < n:
            tau = m[k, k + 2 :] / pivot
            col2 = m[k + 2 :, k + 1]
            m[k + 2 :, k + 2 :] += np.outer(tau, col2) - np.outer(col2, tau)
    return complex(value)


def pfaffian_cofactor(a) -> complex:
    """Recursive first-row cofactor expansion; exponential cost, used as
    a cross-check for small matrices."""
    m = _as_canonical(a)

    def rec(sub: np.ndarray) -> complex:
        n = sub.shape[0]
        if n == 0:
            return 1.0 + 0.0j
        total = 0.0 + 0.0j
        rest = list(range(1, n))
        for pos, j in enumerate(rest):
            keep = [q for q in rest if q != j]
            sign = -1.0 if pos % 2 else 1.0
            total += sign * sub[0, j] * rec(sub[np.ix_(keep, keep)])
        return total

    return complex(rec(m))


@dataclass(frozen=True)
class CorrelationQuery:
    """A finite set of lattice points, strictly increasing."""

    points: tuple

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError(f"points must be strictly increasing, got {pts}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def correlation_pfaffian(kernel, query, tol: float = _ASYM_TOL) -> complex:
    """rho(X) = Pf of the 2n x 2n matrix whose 2x2 block (i,j) is
    K(x_i, x_j), blocks interleaved so point i occupies rows 2i-1, 2i.

    One scalar-kernel table over {x, x+1 : x in X} supplies every block;
    the table is antisymmetry-checked (AsymmetryError beyond tol) and
    canonicalized before assembly, so the assembled matrix is exactly
    antisymmetric.  Empty X returns 1.
    """
    if not isinstance(query, CorrelationQuery):
        query = CorrelationQuery(tuple(query))
    pts = query.points
    n = len(pts)
    if n == 0:
        return 1.0 + 0.0j

    support = sorted({v for x in pts for v in (x, x + 1)})
    pos = {v: i for i, v in enumerate(support)}
    table = np.asarray(kernel.table(support, support), dtype=complex)

    scale = float(np.abs(table).max())
    gap = float(np.abs(table + table.T).max())
    if gap > tol * max(scale, 1e-300):
        raise AsymmetryError(
            f"scalar kernel table violates antisymmetry: {gap:.3e} "
            f"against scale {scale:.3e}"
        )
    s = (table - table.T) / 2

    b = np.zeros((2 * n, 2 * n), dtype=complex)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            xu, xd = pos[x + 1], pos[x]
            yu, yd = pos[y + 1], pos[y]
            b[2 * i, 2 * j] = s[xu, yu]
            b[2 * i, 2 * j + 1] = -s[xu, yd]
            b[2 * i + 1, 2 * j] = -s[xd, yu]
            b[2 * i + 1, 2 * j + 1] = s[xd, yd]
    return pfaffian(AntisymmetricMatrix(b))
