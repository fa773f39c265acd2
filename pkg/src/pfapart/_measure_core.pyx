# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled partition sweep core.

Same contract as `_measure_core_py` (the pure Python reference); see
`backend` for how one of the two is selected at import time.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def build_table(int n_cut):
    """Enumerate every partition with size <= n_cut.

    Returns (sizes, lengths, parents, last_parts, offsets, parts_flat, hh)
    with the same layout as the pure Python implementation: node 0 is the
    empty partition, parents precede children, and hh holds H * H' at
    Jack parameter 2.
    """
    if n_cut < 0:
        raise ValueError("n_cut must be nonnegative")

    cdef cnp.int32_t[:] parts = np.zeros(n_cut + 1, dtype=np.int32)
    cdef cnp.int32_t[:] nexts = np.zeros(n_cut + 2, dtype=np.int32)
    cdef int l, n, m
    cdef long count, total

    # pass 1: count nodes and the total number of stored parts
    count = 1
    total = 0
    l = 0
    n = 0
    nexts[0] = n_cut
    while True:
        m = nexts[l]
        if m >= 1:
            nexts[l] = m - 1
            parts[l] = m
            l += 1
            n += m
            count += 1
            total += l
            nexts[l] = m if m < n_cut - n else n_cut - n
        else:
            if l == 0:
                break
            l -= 1
            n -= parts[l]

    sizes_arr = np.zeros(count, dtype=np.int32)
    lengths_arr = np.zeros(count, dtype=np.int32)
    parents_arr = np.zeros(count, dtype=np.int64)
    last_arr = np.zeros(count, dtype=np.int32)
    offsets_arr = np.zeros(count + 1, dtype=np.int64)
    flat_arr = np.zeros(total, dtype=np.int32)
    hh_arr = np.ones(count, dtype=np.float64)

    cdef cnp.int32_t[:] sizes = sizes_arr
    cdef cnp.int32_t[:] lengths = lengths_arr
    cdef long[:] parents = parents_arr
    cdef cnp.int32_t[:] last_parts = last_arr
    cdef long[:] offsets = offsets_arr
    cdef cnp.int32_t[:] flat = flat_arr
    cdef double[:] hh = hh_arr

    cdef cnp.int32_t[:] conj = np.zeros(n_cut + 1, dtype=np.int32)
    cdef long[:] idx_at = np.zeros(n_cut + 2, dtype=np.int64)

    cdef long idx, off
    cdef int i, j, p, lg, t
    cdef double v

    parents[0] = -1
    l = 0
    n = 0
    idx = 0
    off = 0
    nexts[0] = n_cut
    idx_at[0] = 0
    while True:
        m = nexts[l]
        if m >= 1:
            nexts[l] = m - 1
            parts[l] = m
            l += 1
            n += m
            for j in range(1, m + 1):
                conj[j] += 1
            idx += 1
            sizes[idx] = n
            lengths[idx] = l
            parents[idx] = idx_at[l - 1]
            last_parts[idx] = m
            for i in range(l):
                flat[off + i] = parts[i]
            off += l
            offsets[idx + 1] = off
            idx_at[l] = idx
            nexts[l] = m if m < n_cut - n else n_cut - n
            # hook pair product over all boxes, row major
            v = 1.0
            for i in range(1, l + 1):
                p = parts[i - 1]
                for j in range(1, p + 1):
                    lg = conj[j] - i
                    t = (p - j) + 2 * lg
                    v *= (t + 1.0) * (t + 2.0)
            hh[idx] = v
        else:
            if l == 0:
                break
            l -= 1
            m = parts[l]
            n -= m
            for j in range(1, m + 1):
                conj[j] -= 1

    return sizes_arr, lengths_arr, parents_arr, last_arr, offsets_arr, flat_arr, hh_arr


def pochhammer_pair_products(parents, lengths, last_parts, z1, z2):
    """prod over rows i of (z1 - 2(i-1)) and (z2 - 2(i-1)) rising to lam_i,
    one complex value per node (parent value times the last row factor)."""
    cdef long[:] par = np.ascontiguousarray(parents, dtype=np.int64)
    cdef cnp.int32_t[:] lens = np.ascontiguousarray(lengths, dtype=np.int32)
    cdef cnp.int32_t[:] last = np.ascontiguousarray(last_parts, dtype=np.int32)
    cdef double complex c1 = z1
    cdef double complex c2 = z2
    cdef long count = par.shape[0]
    out_arr = np.ones(count, dtype=np.complex128)
    cdef double complex[:] out = out_arr
    cdef long i
    cdef int q, m
    cdef double complex b1, b2, f
    for i in range(1, count):
        m = last[i]
        b1 = c1 - 2.0 * (lens[i] - 1)
        b2 = c2 - 2.0 * (lens[i] - 1)
        f = 1.0
        for q in range(m):
            f = f * ((b1 + q) * (b2 + q))
        out[i] = out[par[i]] * f
    return out_arr


def window_masks(lengths, offsets, parts_flat, int lo, int hi):
    """Per node bit mask of which values in [lo, hi] the shifted set
    {lam_i - 2i} contains; bit (v - lo) set when v is present."""
    if hi < lo:
        raise ValueError("empty window")
    if hi - lo > 62:
        raise ValueError("window wider than 63 values")
    cdef cnp.int32_t[:] lens = np.ascontiguousarray(lengths, dtype=np.int32)
    cdef long[:] offs = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.int32_t[:] flat = np.ascontiguousarray(parts_flat, dtype=np.int32)
    cdef long count = lens.shape[0]
    cdef int max_len = 0
    cdef long i
    for i in range(count):
        if lens[i] > max_len:
            max_len = lens[i]

    lut_arr = np.zeros(max_len + 1, dtype=np.int64)
    cdef long[:] lut = lut_arr
    cdef int l, v, top
    cdef long acc
    for l in range(max_len + 1):
        top = hi if hi < -2 * (l + 1) else -2 * (l + 1)
        acc = 0
        v = lo if lo % 2 == 0 else lo + 1
        while v <= top:
            acc |= (<long>1) << (v - lo)
            v += 2
        lut[l] = acc

    masks_arr = np.zeros(count, dtype=np.int64)
    cdef long[:] masks = masks_arr
    cdef long off
    cdef int r
    for i in range(count):
        l = lens[i]
        off = offs[i]
        acc = lut[l]
        for r in range(1, l + 1):
            v = flat[off + r - 1] - 2 * r
            if v < lo:
                break
            if v <= hi:
                acc |= (<long>1) << (v - lo)
        masks[i] = acc
    return masks_arr
