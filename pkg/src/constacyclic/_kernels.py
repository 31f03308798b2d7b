"""Numba kernels enumerating fixed-weight messages of a systematic generator.

Both kernels visit every message of Hamming weight ``w`` whose first nonzero
coefficient is 1 and whose first support position is ``first``.  Only the
redundancy part of each codeword is accumulated; its weight is ``w`` plus the
weight of that part.  They return the number of codewords visited and the
smallest weight seen (``best_in`` when nothing lighter turned up), writing the
positions/coefficients of the lightest message into ``pos_out``/``lam_out``.

``stop_below``: abandon the block as soon as a weight ``< stop_below`` is seen.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True, nogil=True)
def enum_block_table(Rm, addt, w, first, best_in, stop_below, pos_out, lam_out):
    k = Rm.shape[0]
    q = Rm.shape[1]
    r = Rm.shape[2]
    best = best_in
    count = 0
    acc = np.zeros((w, r), dtype=Rm.dtype)
    pos = np.zeros(w, dtype=np.int64)
    lam = np.zeros(w, dtype=np.int64)
    pos[0] = first
    lam[0] = 1
    for c in range(r):
        acc[0, c] = Rm[first, 1, c]
    if w == 1:
        wt = 1
        for c in range(r):
            if acc[0, c] != 0:
                wt += 1
        count += 1
        if wt < best:
            best = wt
            pos_out[0] = first
            lam_out[0] = 1
        return count, best
    d = 1
    pos[1] = first + 1
    lam[1] = 1
    while d >= 1:
        if pos[d] > k - w + d:
            d -= 1
            if d == 0:
                break
            lam[d] += 1
            if lam[d] == q:
                lam[d] = 1
                pos[d] += 1
            continue
        row = pos[d]
        lv = lam[d]
        for c in range(r):
            acc[d, c] = addt[acc[d - 1, c], Rm[row, lv, c]]
        if d == w - 1:
            wt = w
            for c in range(r):
                if acc[d, c] != 0:
                    wt += 1
            count += 1
            if wt < best:
                best = wt
                for i in range(w):
                    pos_out[i] = pos[i]
                    lam_out[i] = lam[i]
                if best < stop_below:
                    return count, best
            lam[d] += 1
            if lam[d] == q:
                lam[d] = 1
                pos[d] += 1
        else:
            d += 1
            pos[d] = pos[d - 1] + 1
            lam[d] = 1
    return count, best


@njit(cache=True, nogil=True)
def enum_block_bits(Rb, w, first, best_in, stop_below, pos_out, lam_out):
    """Same walk for characteristic 2: ``Rb[i, lam, plane, word]`` bit-planes, addition is XOR."""
    k = Rb.shape[0]
    q = Rb.shape[1]
    m = Rb.shape[2]
    nw = Rb.shape[3]
    best = best_in
    count = 0
    acc = np.zeros((w, m, nw), dtype=np.uint64)
    pos = np.zeros(w, dtype=np.int64)
    lam = np.zeros(w, dtype=np.int64)
    pos[0] = first
    lam[0] = 1
    for b in range(m):
        for u in range(nw):
            acc[0, b, u] = Rb[first, 1, b, u]
    if w == 1:
        wt = 1
        for u in range(nw):
            o = np.uint64(0)
            for b in range(m):
                o |= acc[0, b, u]
            wt += _popcount64(o)
        count += 1
        if wt < best:
            best = wt
            pos_out[0] = first
            lam_out[0] = 1
        return count, best
    d = 1
    pos[1] = first + 1
    lam[1] = 1
    while d >= 1:
        if pos[d] > k - w + d:
            d -= 1
            if d == 0:
                break
            lam[d] += 1
            if lam[d] == q:
                lam[d] = 1
                pos[d] += 1
            continue
        row = pos[d]
        lv = lam[d]
        if d == w - 1:
            wt = w
            for u in range(nw):
                o = np.uint64(0)
                for b in range(m):
                    o |= acc[d - 1, b, u] ^ Rb[row, lv, b, u]
                wt += _popcount64(o)
            count += 1
            if wt < best:
                best = wt
                for i in range(w):
                    pos_out[i] = pos[i]
                    lam_out[i] = lam[i]
                if best < stop_below:
                    return count, best
            lam[d] += 1
            if lam[d] == q:
                lam[d] = 1
                pos[d] += 1
        else:
            for b in range(m):
                for u in range(nw):
                    acc[d, b, u] = acc[d - 1, b, u] ^ Rb[row, lv, b, u]
            d += 1
            pos[d] = pos[d - 1] + 1
            lam[d] = 1
    return count, best
