"""Numba implementation of the copy-enumeration kernel.

Importing this module compiles the kernel lazily on first call.  The
pure-numpy fallback in :mod:`.copies` implements the same contract.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def enumerate_kernel(adj, hdeg, back_mat, back_cnt, fdeg, auts, out):
    """Iterative backtracking over injective maps pattern -> host.

    Returns the number of automorphism-canonical maps written to ``out``,
    or -1 if ``out`` is full.  A map is canonical when its image tuple is
    lexicographically minimal over the automorphism group, so exactly one
    map per copy is emitted.
    """
    n = adj.shape[0]
    nf = back_mat.shape[0]
    na = auts.shape[0]
    img = np.zeros(nf, dtype=np.int64)
    ptr = np.zeros(nf, dtype=np.int64)
    count = 0
    i = 0
    while i >= 0:
        if i == nf:
            canonical = True
            for a in range(na):
                cmp = 0
                for t in range(nf):
                    x = img[auts[a, t]]
                    y = img[t]
                    if x < y:
                        cmp = -1
                        break
                    if x > y:
                        cmp = 1
                        break
                if cmp == -1:
                    canonical = False
                    break
            if canonical:
                if count >= out.shape[0]:
                    return -1
                for t in range(nf):
                    out[count, t] = img[t]
                count += 1
            i -= 1
            continue
        found = False
        v = ptr[i]
        while v < n:
            if hdeg[v] >= fdeg[i]:
                ok = True
                for j in range(back_cnt[i]):
                    if adj[v, img[back_mat[i, j]]] == 0:
                        ok = False
                        break
                if ok:
                    for j in range(i):
                        if img[j] == v:
                            ok = False
                            break
                if ok:
                    img[i] = v
                    ptr[i] = v + 1
                    found = True
                    break
            v += 1
        if found:
            i += 1
            if i < nf:
                ptr[i] = 0
        else:
            i -= 1
    return count
