"""Compiled inner loops for the exhaustive sweeps.

Everything here works on plain int64 scalars so a coefficient index (up to
2^58) and every intermediate mask stay inside one machine word.  The kernels
are nogil so thread pools get real concurrency, and cache=True keeps the
compilation cost to the first ever call.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def sweep_ranks(heights, k, start, stop, counts):
    """Tally matrix ranks for coefficient indices in [start, stop).

    heights -- int64 array of block heights (1 or 2), one per block
    k       -- number of columns
    counts  -- int64 array of length max_rank + 2, incremented in place
               (the final slot is a guard that must stay zero)

    Index bits are consumed block by block, least significant bits first:
    block j takes k + heights[j] - 1 bits, and within a block row r is the
    k-bit window starting at bit r of the block's chunk.
    """
    kmask = (np.int64(1) << k) - 1
    piv = np.zeros(64, dtype=np.int64)
    used = np.empty(32, dtype=np.int64)
    for idx in range(start, stop):
        rem = idx
        rk = 0
        for j in range(heights.shape[0]):
            h = heights[j]
            nbits = k + h - 1
            chunk = rem & ((np.int64(1) << nbits) - 1)
            rem >>= nbits
            for r in range(h):
                row = (chunk >> r) & kmask
                while row != 0:
                    low = row & (-row)
                    b = 0
                    while (low >> b) & 1 == 0:
                        b += 1
                    p = piv[b]
                    if p != 0:
                        row ^= p
                    else:
                        piv[b] = row
                        used[rk] = b
                        rk += 1
                        break
        counts[rk] += 1
        for t in range(rk):
            piv[used[t]] = 0


@njit(cache=True, nogil=True)
def count_zero_evals(q, n, k, start, stop):
    """Count parameter indices in [start, stop) whose n bilinear sums all vanish.

    An index packs, for each of the q columns, a k-bit value Y followed by
    n two-bit multipliers U (least significant bits first).  The sum for row
    j is the XOR over columns of the carryless product U_j * Y, and an index
    is counted when all n sums are zero.
    """
    kmask = (np.int64(1) << k) - 1
    y = np.empty(q, dtype=np.int64)
    u = np.empty(q * n, dtype=np.int64)
    total = np.int64(0)
    for idx in range(start, stop):
        rem = idx
        for i in range(q):
            y[i] = rem & kmask
            rem >>= k
            for j in range(n):
                u[i * n + j] = rem & 3
                rem >>= 2
        ok = True
        for j in range(n):
            acc = np.int64(0)
            for i in range(q):
                uv = u[i * n + j]
                if uv & 1:
                    acc ^= y[i]
                if uv & 2:
                    acc ^= y[i] << 1
            if acc != 0:
                ok = False
                break
        if ok:
            total += 1
    return total
