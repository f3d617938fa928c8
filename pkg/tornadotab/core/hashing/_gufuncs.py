import numpy as np
from numba import guvectorize, njit

from ._prng import M0, M1, MASK32, ROUNDS, SHIFT32, W0, W1


@njit("uint64[:](int64, uint64, uint64, uint64, uint64, uint64, int64)")
def _fill_table_nb(size, table, role, sub, k0, k1, bits):
    """Philox-4x32-10 table filling, entry ``e`` from counter ``(e, table, role, sub)``."""
    out = np.empty(size, dtype=np.uint64)
    shift = np.uint64(64 - bits)
    for e in range(size):
        c0 = np.uint64(e)
        c1 = table
        c2 = role
        c3 = sub
        a = k0
        b = k1
        for r in range(ROUNDS):
            if r > 0:
                a = (a + W0) & MASK32
                b = (b + W1) & MASK32
            p0 = M0 * c0
            p1 = M1 * c2
            n0 = (p1 >> SHIFT32) ^ c1 ^ a
            n1 = p1 & MASK32
            n2 = (p0 >> SHIFT32) ^ c3 ^ b
            n3 = p0 & MASK32
            c0 = n0
            c1 = n1
            c2 = n2
            c3 = n3
        out[e] = (c0 | (c1 << SHIFT32)) >> shift
    return out


@njit
def _derive_nb(chars, twist, derive):
    """Derived keys: twisted character then ``d`` characters from the growing prefix."""
    n, c = chars.shape
    d = derive.shape[0]
    out = np.empty((n, c + d), dtype=np.uint64)
    for r in range(n):
        h0 = np.uint64(0)
        for j in range(c - 1):
            out[r, j] = chars[r, j]
            h0 ^= twist[j, chars[r, j]]
        out[r, c - 1] = chars[r, c - 1] ^ h0
        for i in range(d):
            v = np.uint64(0)
            for j in range(c + i):
                v ^= derive[i, j, out[r, j]]
            out[r, c + i] = v
    return out


@guvectorize(["void(uint64[:], uint64[:, :], uint64[:])"], "(m),(m,s)->()")
def _tabulate_gufunc(chars: np.ndarray, tables: np.ndarray, out: np.ndarray):
    """Simple tabulation of one character vector."""
    h = np.uint64(0)
    for j in range(chars.shape[0]):
        h ^= tables[j, chars[j]]
    out[0] = h
