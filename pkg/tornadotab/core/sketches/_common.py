import typing as tp

import numpy as np

from tornadotab.core.errors import ParameterError
from tornadotab.core.hashing import hash_keys, hasher_fingerprint
from tornadotab.core.utils import as_keys

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import Hasher, HashParams
    from tornadotab.core.typing import Backend, KeysLike


def hashed_keys(
    keys: "KeysLike", hasher: "Hasher", backend: "Backend"
) -> tuple[np.ndarray, np.ndarray]:
    """Distinct keys in ascending order with their hash values."""
    arr, _ = as_keys(keys, hasher.params.key_bits)
    arr = np.unique(arr)
    return arr, np.atleast_1d(hash_keys(hasher, arr, backend=backend))


def order_by_hash(hashes: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Permutation sorting by hash value, ties broken by key."""
    return np.lexsort((keys, hashes))


def check_mergeable(a, b) -> None:
    if type(a) is not type(b):
        raise ParameterError("Cannot merge sketches of different types.")
    if a.k != b.k:
        raise ParameterError(f"Cannot merge sketches with k={a.k} and k={b.k}.")
    if a.fingerprint != b.fingerprint:
        raise ParameterError("Cannot merge sketches built with different hash functions.")


def check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}.")


def check_power_of_two(k: int, params: "HashParams") -> int:
    """``log2(k)`` for a power of two not exceeding the hash range."""
    check_k(k)
    if k & (k - 1):
        raise ParameterError(f"k must be a power of two, got {k}.")
    log_k = int(k).bit_length() - 1
    if log_k >= params.range_bits:
        raise ParameterError(
            f"k={k} leaves no local hash bits in a {params.range_bits}-bit hash value."
        )
    return log_k


def fingerprint(hasher: "Hasher") -> int:
    return hasher_fingerprint(hasher)
