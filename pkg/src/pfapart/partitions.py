"""Integer partitions and the combinatorial products built on them.

A partition is a weakly decreasing tuple of positive integers.  Besides
enumeration and conjugation this module provides the two ingredients that
every measure in the package is assembled from: the pair of deformed hook
products H and H' with Jack parameter theta, and the generalized rising
factorial (z)_{lam,theta}.  Both are computed with plain products so they
stay exact when called with Fraction arguments.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from .errors import DomainError


class Partition:
    """An integer partition, stored as a weakly decreasing tuple of parts.

    Trailing zeros are stripped on construction.  Instances are immutable
    and hashable, and compare equal when their parts agree.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int] = ()):
        cleaned = []
        prev = None
        for p in parts:
            q = int(p)
            if q != p:
                raise DomainError(f"non-integer part {p!r}")
            if q == 0:
                prev = 0
                continue
            if q < 0:
                raise DomainError(f"negative part {q}")
            if prev == 0:
                raise DomainError("nonzero part after a zero part")
            if prev is not None and prev != 0 and q > prev:
                raise DomainError(f"parts not weakly decreasing: {q} after {prev}")
            cleaned.append(q)
            prev = q
        self._parts = tuple(cleaned)

    @property
    def parts(self) -> tuple[int, ...]:
        """The parts as a tuple, largest first."""
        return self._parts

    @property
    def size(self) -> int:
        """Number of boxes, the sum of all parts."""
        return sum(self._parts)

    @property
    def length(self) -> int:
        """Number of nonzero parts."""
        return len(self._parts)

    def part(self, i: int) -> int:
        """The i-th part (1-based), zero once i exceeds the length."""
        if i < 1:
            raise IndexError("row index is 1-based")
        return self._parts[i - 1] if i <= len(self._parts) else 0

    def conjugate(self) -> "Partition":
        """The transposed diagram, obtained by counting column heights."""
        return conjugate(self)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, i):
        return self._parts[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts == other._parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"Partition({list(self._parts)})"


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order, (n) first.

    n = 0 yields the single empty partition.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")

    out: list[tuple[int, ...]] = []
    stack: list[int] = []

    def descend(remaining: int, max_part: int) -> None:
        if remaining == 0:
            out.append(tuple(stack))
            return
        for m in range(min(remaining, max_part), 0, -1):
            stack.append(m)
            descend(remaining - m, m)
            stack.pop()

    descend(n, n if n else 1)
    return [Partition(p) for p in out]


def conjugate(lam) -> Partition:
    """Transpose of the Young diagram: lam'_j = #{i : lam_i >= j}."""
    lam = _as_partition(lam)
    parts = lam.parts
    if not parts:
        return Partition()
    cols = [0] * parts[0]
    for p in parts:
        for j in range(p):
            cols[j] += 1
    return Partition(cols)


def descent_set_d2(lam, count: int) -> list[int]:
    """First `count` elements of the shifted coordinate set {lam_i - 2i}.

    Rows beyond the length of lam contribute -2i, so the sequence
    continues through consecutive even negative integers.  The result is
    strictly decreasing.
    """
    lam = _as_partition(lam)
    if count < 0:
        raise DomainError("count must be nonnegative")
    return [lam.part(i) - 2 * i for i in range(1, count + 1)]


def hook_products(lam, theta, as_log: bool = False):
    """Deformed hook products (H, H') at Jack parameter theta.

    For each box (i, j) of the diagram, with a = lam_i - j the arm and
    l = lam'_j - i the leg,

        H  gains a factor a + l*theta + 1,
        H' gains a factor a + l*theta + theta.

    The arithmetic follows the type of theta, so Fraction input gives an
    exact result.  With as_log=True the natural logs of both products are
    returned instead, which avoids overflow for very large diagrams
    (theta must be a positive real in that case).
    """
    lam = _as_partition(lam)
    parts = lam.parts
    conj = conjugate(lam).parts
    if as_log:
        log_h = 0.0
        log_hp = 0.0
        for i, p in enumerate(parts, start=1):
            for j in range(1, p + 1):
                a = p - j
                l = conj[j - 1] - i
                log_h += math.log(a + l * theta + 1)
                log_hp += math.log(a + l * theta + theta)
        return log_h, log_hp

    one = theta ** 0  # multiplicative unit in the arithmetic of theta
    h = one
    hp = one
    for i, p in enumerate(parts, start=1):
        for j in range(1, p + 1):
            a = p - j
            l = conj[j - 1] - i
            base = a + l * theta
            h = h * (base + 1)
            hp = hp * (base + theta)
    return h, hp


def generalized_pochhammer(z, lam, theta):
    """Generalized rising factorial: prod over rows i of (z - (i-1)*theta)
    rising to the row length lam_i.

    Follows the arithmetic of z and theta, so exact for Fractions and
    valid for complex z.  The empty partition gives 1.
    """
    lam = _as_partition(lam)
    out = None
    for i, p in enumerate(lam.parts, start=1):
        base = z - (i - 1) * theta
        for q in range(p):
            factor = base + q
            out = factor if out is None else out * factor
    if out is None:
        return z ** 0 if not isinstance(z, (int, float, complex)) else 1
    return out
