"""Key sets the experiments hash."""
import functools
import logging
import math

import numpy as np

from tornadotab.core.errors import ConfigError
from tornadotab.core.hashing import HashParams, pack_keys

logger = logging.getLogger(__name__)

KEY_SET_SEED = 0x5EED


def sequential_keys(n: int, params: HashParams) -> np.ndarray:
    """The integers ``0..n-1`` as packed keys."""
    _check_capacity(n, params.key_bits)
    return np.arange(n, dtype=np.uint64)


def random_keys(n: int, params: HashParams, seed: int = KEY_SET_SEED) -> np.ndarray:
    """``n`` distinct uniformly random keys, sorted."""
    _check_capacity(n, params.key_bits)
    rng = np.random.default_rng(seed)
    high = 1 << params.key_bits
    keys = np.zeros(0, dtype=np.uint64)
    while keys.shape[0] < n:
        draw = rng.integers(0, high, size=n - keys.shape[0], dtype=np.uint64, endpoint=False)
        keys = np.unique(np.concatenate([keys, draw]))
    return keys


def adversarial_prefix_keys(n: int, params: HashParams) -> np.ndarray:
    """Keys that differ only in their first two characters.

    The keys fill a near-square grid over characters 0 and 1 row by row, with
    every other character zero. Such sets are the structured inputs on which
    simple tabulation is weakest.
    """
    if params.c == 1:
        return sequential_keys(n, params)
    s = params.sigma_size
    if n > s * s:
        raise ConfigError(f"At most {s * s} keys differ in two characters, got n={n}.")
    side = np.uint64(math.isqrt(n - 1) + 1 if n else 1)
    idx = np.arange(n, dtype=np.uint64)
    chars = np.zeros((n, params.c), dtype=np.uint64)
    chars[:, 0] = idx % side
    chars[:, 1] = idx // side
    return pack_keys(chars, params)


def _check_capacity(n: int, key_bits: int) -> None:
    if key_bits < 64 and n > 1 << key_bits:
        raise ConfigError(f"Only {1 << key_bits} distinct keys of {key_bits} bits exist.")


GENERATORS = {
    "sequential": sequential_keys,
    "random": random_keys,
    "adversarial-prefix": adversarial_prefix_keys,
}


@functools.lru_cache(maxsize=8)
def key_set(generator: str, n: int, params: HashParams) -> np.ndarray:
    try:
        make = GENERATORS[generator]
    except KeyError:
        raise ConfigError(f"Unknown key generator {generator!r}.") from None
    keys = make(n, params)
    keys.setflags(write=False)
    logger.debug("Generated %d %s keys", n, generator)
    return keys
