"""Counter-based pseudo-random numbers for filling lookup tables.

Philox-4x32 with ten rounds: every output block is a keyed bijection of a
128-bit counter, so any table entry can be generated on its own and the
result does not depend on the order of generation.
"""
import numpy as np

M0 = np.uint64(0xD2511F53)
M1 = np.uint64(0xCD9E8D57)
W0 = np.uint64(0x9E3779B9)
W1 = np.uint64(0xBB67AE85)
MASK32 = np.uint64(0xFFFFFFFF)
SHIFT32 = np.uint64(32)
ROUNDS = 10

ROLE_TWIST = 0
ROLE_DERIVE = 1
ROLE_TOP = 2
ROLE_ORACLE = 3
ROLE_SIMPLE = 4
ROLE_RESAMPLE = 5


def seed_key(seed: int) -> tuple[np.uint64, np.uint64]:
    """Split a 64-bit seed into the two 32-bit Philox key words."""
    seed = int(seed)
    return np.uint64(seed & 0xFFFFFFFF), np.uint64(seed >> 32)


def philox4x32(counter, key) -> tuple[np.ndarray, ...]:
    """Philox-4x32-10 block function, vectorised over counters.

    Parameters
    ----------
    counter: sequence of four arrays
        The 32-bit counter words; arrays broadcast against each other.
    key: pair of ints
        The two 32-bit key words.

    Returns
    -------
    out: tuple of four uint64 arrays
        The four 32-bit output words.
    """
    c0, c1, c2, c3 = np.broadcast_arrays(
        *(np.asarray(w, dtype=np.uint64) & MASK32 for w in counter)
    )
    k0, k1 = (np.uint64(int(k) & 0xFFFFFFFF) for k in key)
    for r in range(ROUNDS):
        if r:
            k0 = (k0 + W0) & MASK32
            k1 = (k1 + W1) & MASK32
        p0 = M0 * c0
        p1 = M1 * c2
        c0, c1, c2, c3 = (
            (p1 >> SHIFT32) ^ c1 ^ k0,
            p1 & MASK32,
            (p0 >> SHIFT32) ^ c3 ^ k1,
            p0 & MASK32,
        )
    return c0, c1, c2, c3


def random_words(counter, key, bits: int) -> np.ndarray:
    """Uniform ``bits``-bit values drawn from the first two output words."""
    out = philox4x32(counter, key)
    word = out[0] | (out[1] << SHIFT32)
    return word >> np.uint64(64 - bits)


def fill_table(seed: int, role: int, table: int, sub: int, size: int, bits: int):
    """Entries ``0..size-1`` of one lookup table.

    Entry ``e`` comes from counter ``(e, table, role, sub)`` under the seed key.
    """
    entries = np.arange(size, dtype=np.uint64)
    return random_words((entries, table, role, sub), seed_key(seed), bits)
