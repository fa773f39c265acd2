"""Selection of the partition sweep implementation.

The brute force evaluators sweep every partition up to a size cutoff,
which is the one genuinely hot loop in the package.  A compiled core
(``_measure_core``, built from Cython) is used when the extension was
compiled at install time; otherwise the pure Python implementation takes
over transparently.  Set the environment variable ``PFAPART_PURE_PYTHON``
to any nonempty value to force the fallback, e.g. for benchmarking.

Tables are cached per cutoff for the lifetime of the process.
"""

import os
from functools import lru_cache
from typing import NamedTuple

import numpy as np

if os.environ.get("PFAPART_PURE_PYTHON"):
    from . import _measure_core_py as impl

    BACKEND = "python"
else:
    try:
        from . import _measure_core as impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _measure_core_py as impl

        BACKEND = "python"


class PartitionTable(NamedTuple):
    """Flat arrays describing every partition with size <= n_cut.

    Node 0 is the empty partition and every node's parent (obtained by
    dropping the last row) appears earlier, so forward passes resolve
    recurrences.  ``hh`` holds the product of the two deformed hook
    products at Jack parameter 2.
    """

    n_cut: int
    sizes: np.ndarray
    lengths: np.ndarray
    parents: np.ndarray
    last_parts: np.ndarray
    offsets: np.ndarray
    parts_flat: np.ndarray
    hh: np.ndarray

    @property
    def count(self) -> int:
        return len(self.sizes)

    def parts_of(self, i: int) -> tuple[int, ...]:
        """Parts of node i, largest first."""
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return tuple(int(p) for p in self.parts_flat[lo:hi])


@lru_cache(maxsize=8)
def table(n_cut: int) -> PartitionTable:
    """The (cached) sweep table for all partitions of size <= n_cut."""
    arrays = impl.build_table(int(n_cut))
    return PartitionTable(int(n_cut), *arrays)


def pochhammer_pair_products(tbl: PartitionTable, z1, z2) -> np.ndarray:
    """Generalized rising factorial products (z1)_lam (z2)_lam at Jack
    parameter 2 for every node of the table, as complex128."""
    return impl.pochhammer_pair_products(
        tbl.parents, tbl.lengths, tbl.last_parts, complex(z1), complex(z2)
    )


@lru_cache(maxsize=64)
def _masks_cached(n_cut: int, lo: int, hi: int) -> np.ndarray:
    tbl = table(n_cut)
    out = impl.window_masks(tbl.lengths, tbl.offsets, tbl.parts_flat, lo, hi)
    out.setflags(write=False)
    return out


def window_masks(tbl: PartitionTable, lo: int, hi: int) -> np.ndarray:
    """Per node bit masks of the window [lo, hi] against the shifted set
    {lam_i - 2i}; bit (v - lo) is set when v belongs to the set."""
    return _masks_cached(tbl.n_cut, int(lo), int(hi))
