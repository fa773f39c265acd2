"""Pure Python implementation of the partition sweep core.

This is the fallback for the compiled module ``_measure_core`` and the
reference its results are checked against; ``backend`` picks one of the
two at import time.  Both expose the same three functions with identical
array contracts.

The enumeration walks all partitions with at most ``n_cut`` boxes depth
first, extending by one row at a time, so every node's parent (the
partition with its last row removed) appears earlier.  Derived per
partition quantities can then be filled with single forward passes.
"""

import numpy as np


def build_table(n_cut):
    """Enumerate every partition with size <= n_cut.

    Returns ``(sizes, lengths, parents, last_parts, offsets, parts_flat,
    hh)``.  Node 0 is the empty partition.  ``parts_flat[offsets[i]:
    offsets[i+1]]`` holds the parts of node i, largest first, and
    ``hh[i]`` is the product H * H' of the two deformed hook products at
    Jack parameter 2.
    """
    if n_cut < 0:
        raise ValueError("n_cut must be nonnegative")

    sizes = [0]
    lengths = [0]
    parents = [-1]
    last_parts = [0]
    parts_flat: list[int] = []
    offsets = [0, 0]

    parts: list[int] = []
    nexts = [n_cut]   # next child row length to try under the current node
    idx_at = [0]      # node index at each depth of the current stack
    n = 0
    counter = 1
    while True:
        m = nexts[-1]
        if m >= 1:
            nexts[-1] = m - 1
            parts.append(m)
            n += m
            sizes.append(n)
            lengths.append(len(parts))
            parents.append(idx_at[-1])
            last_parts.append(m)
            parts_flat.extend(parts)
            offsets.append(len(parts_flat))
            idx_at.append(counter)
            counter += 1
            nexts.append(min(m, n_cut - n))
        else:
            nexts.pop()
            if not parts:
                break
            n -= parts.pop()
            idx_at.pop()

    sizes = np.asarray(sizes, dtype=np.int32)
    lengths = np.asarray(lengths, dtype=np.int32)
    parents = np.asarray(parents, dtype=np.int64)
    last_parts = np.asarray(last_parts, dtype=np.int32)
    offsets = np.asarray(offsets, dtype=np.int64)
    parts_flat = np.asarray(parts_flat, dtype=np.int32)
    hh = _hook_pair_products(lengths, offsets, parts_flat)
    return sizes, lengths, parents, last_parts, offsets, parts_flat, hh


def _hook_pair_products(lengths, offsets, parts_flat):
    """H * H' at Jack parameter 2 for every node, vectorized by column.

    For a box in column j of a node, with arm a and leg l, the two hook
    factors are a + 2l + 1 and a + 2l + 2.  The leg of the box in row i
    is (height of column j) - i, and the column height per node is a
    segment count over the rows with part >= j.
    """
    count = len(lengths)
    hh = np.ones(count, dtype=np.float64)
    if len(parts_flat) == 0:
        return hh
    node_of_row = np.repeat(np.arange(count), lengths)
    row_in_node = np.arange(len(parts_flat)) - np.repeat(offsets[:-1], lengths) + 1
    max_part = int(parts_flat.max())
    for j in range(1, max_part + 1):
        sel = parts_flat >= j
        nid = node_of_row[sel]
        col_height = np.bincount(nid, minlength=count)
        leg = col_height[nid] - row_in_node[sel]
        arm = parts_flat[sel] - j
        t = (arm + 2 * leg).astype(np.float64)
        np.multiply.at(hh, nid, (t + 1.0) * (t + 2.0))
    return hh


def pochhammer_pair_products(parents, lengths, last_parts, z1, z2):
    """prod over rows i of (z1 - 2(i-1)) and (z2 - 2(i-1)) rising to lam_i.

    One complex value per node, computed from the parent's value times
    the contribution of the last row.  Nodes at equal depth share no
    ancestry ordering constraints, so the parent chain is resolved with
    one vectorized pass per depth.
    """
    count = len(lengths)
    z1 = complex(z1)
    z2 = complex(z2)
    lm1 = lengths.astype(np.float64) - 1.0
    base1 = z1 - 2.0 * lm1
    base2 = z2 - 2.0 * lm1
    fac = np.ones(count, dtype=np.complex128)
    max_last = int(last_parts.max()) if count else 0
    for q in range(max_last):
        active = last_parts > q
        fac[active] *= (base1[active] + q) * (base2[active] + q)

    out = np.ones(count, dtype=np.complex128)
    max_len = int(lengths.max()) if count else 0
    for depth in range(1, max_len + 1):
        sel = lengths == depth
        out[sel] = out[parents[sel]] * fac[sel]
    return out


def _tail_lut(max_len, lo, hi):
    """Bit masks of the even values in [lo, min(hi, -2(l+1))] per length l."""
    lut = np.zeros(max_len + 1, dtype=np.int64)
    for l in range(max_len + 1):
        top = min(hi, -2 * (l + 1))
        acc = 0
        v = lo if lo % 2 == 0 else lo + 1
        while v <= top:
            acc |= 1 << (v - lo)
            v += 2
        lut[l] = acc
    return lut


def window_masks(lengths, offsets, parts_flat, lo, hi):
    """Per node bit mask of which values in [lo, hi] its shifted
    coordinate set {lam_i - 2i : i >= 1} contains.

    Bit (v - lo) is set when v is in the set.  Rows past the length
    contribute -2i, handled with a lookup by node length.  The window
    must span at most 63 values.
    """
    if hi < lo:
        raise ValueError("empty window")
    if hi - lo > 62:
        raise ValueError("window wider than 63 values")
    count = len(lengths)
    node_of_row = np.repeat(np.arange(count), lengths)
    row_in_node = np.arange(len(parts_flat)) - np.repeat(offsets[:-1], lengths) + 1
    v = parts_flat - 2 * row_in_node
    sel = (v >= lo) & (v <= hi)
    masks = np.zeros(count, dtype=np.int64)
    bits = np.int64(1) << (v[sel] - lo).astype(np.int64)
    # row values within a node are distinct, so summing distinct bits is an OR
    np.add.at(masks, node_of_row[sel], bits)
    max_len = int(lengths.max()) if count else 0
    masks |= _tail_lut(max_len, lo, hi)[lengths]
    return masks
