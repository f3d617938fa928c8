import math
import typing as tp
from dataclasses import dataclass

import numpy as np

from tornadotab.core.errors import InputError, ParameterError, UnsupportedError
from tornadotab.core.hashing import HashParams, hash_keys
from tornadotab.core.utils import as_keys

from ._common import check_k, check_mergeable, fingerprint

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import Hasher
    from tornadotab.core.typing import Backend, KeysLike

MASK32 = np.uint64(0xFFFFFFFF)
SHIFT32 = np.uint64(32)
NO_HASH = np.uint64(0xFFFFFFFFFFFFFFFF)


@dataclass(frozen=True, eq=False)
class VectorKSample:
    """Per-bucket min-key vector of a key set (one permutation hashing).

    Key ``x`` is hashed as the indexed keys ``(x << char_bits) | j`` for
    ``j < fill``; bucket ``i`` keeps the indexed key with the smallest
    ``(hash, key)``. ``occupied`` marks the buckets that received a key.
    """

    k: int
    fill: int
    hashes: np.ndarray
    keys: np.ndarray
    occupied: np.ndarray
    params: HashParams
    fingerprint: int

    @property
    def holes(self) -> int:
        return int(self.k - np.count_nonzero(self.occupied))

    @property
    def min_keys(self) -> np.ndarray:
        """Original keys of the min-keys; meaningful where ``occupied``."""
        return self.keys >> np.uint64(self.params.char_bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorKSample)
            and (self.k, self.fill, self.fingerprint)
            == (other.k, other.fill, other.fingerprint)
            and np.array_equal(self.occupied, other.occupied)
            and np.array_equal(self.hashes[self.occupied], other.hashes[other.occupied])
            and np.array_equal(self.keys[self.occupied], other.keys[other.occupied])
        )


def fill_count(n: int, k: int, target_error_p: float | None) -> int:
    """Replication count ``J = max(1, ceil(k ln(k/P) / n))``.

    With ``J`` copies of every key all ``k`` buckets are filled except with
    probability about ``P``.
    """
    if target_error_p is None or n == 0:
        return 1
    if not 0 < target_error_p < 1:
        raise ParameterError(f"target_error_p must lie in (0, 1), got {target_error_p}.")
    return max(1, math.ceil(k * math.log(k / target_error_p) / n))


def bucket_index(hashes: np.ndarray, k: int, range_bits: int) -> np.ndarray:
    """``floor(h k / 2**range_bits)`` computed on 32-bit halves."""
    h = hashes << np.uint64(64 - range_bits)
    kk = np.uint64(k)
    high = (h >> SHIFT32) * kk + (((h & MASK32) * kk) >> SHIFT32)
    return (high >> SHIFT32).astype(np.int64)


def _empty(k: int, fill: int, hasher: "Hasher") -> VectorKSample:
    return VectorKSample(
        k,
        fill,
        np.full(k, NO_HASH, dtype=np.uint64),
        np.zeros(k, dtype=np.uint64),
        np.zeros(k, dtype=bool),
        hasher.params,
        fingerprint(hasher),
    )


def vectork_build(
    keys: "KeysLike",
    hasher: "Hasher",
    k: int,
    target_error_p: float | None = None,
    *,
    fill: int | None = None,
    backend: "Backend" = None,
) -> VectorKSample:
    """Build the vector-k sample, replicating keys to fill the holes.

    ``fill`` fixes the replication count; samples can only be merged or
    compared when it agrees.
    """
    check_k(k)
    if k >= 1 << 32:
        raise ParameterError("k must be below 2**32.")
    p = hasher.params
    arr, _ = as_keys(keys, p.key_bits - p.char_bits)
    arr = np.unique(arr)
    j = fill_count(arr.shape[0], k, target_error_p) if fill is None else fill
    if not 1 <= j <= p.sigma_size:
        raise ParameterError(
            f"The replication count {j} must lie in [1, {p.sigma_size}]."
        )
    sample = _empty(k, j, hasher)
    if arr.size == 0:
        return sample
    w = np.uint64(p.char_bits)
    indexed = np.concatenate([(arr << w) | np.uint64(i) for i in range(j)])
    hashes = np.atleast_1d(hash_keys(hasher, indexed, backend=backend))
    buckets = bucket_index(hashes, k, p.range_bits)
    order = np.lexsort((indexed, hashes, buckets))
    slots, first = np.unique(buckets[order], return_index=True)
    winners = order[first]
    sample.hashes[slots] = hashes[winners]
    sample.keys[slots] = indexed[winners]
    sample.occupied[slots] = True
    return sample


def vectork_union(a: VectorKSample, b: VectorKSample) -> VectorKSample:
    """Coordinatewise minimum of two samples."""
    check_mergeable(a, b)
    if a.fill != b.fill:
        raise ParameterError(f"Cannot merge samples with fill {a.fill} and {b.fill}.")
    smaller = (b.hashes < a.hashes) | ((b.hashes == a.hashes) & (b.keys < a.keys))
    take_b = b.occupied & (~a.occupied | smaller)
    return VectorKSample(
        a.k,
        a.fill,
        np.where(take_b, b.hashes, a.hashes),
        np.where(take_b, b.keys, a.keys),
        a.occupied | b.occupied,
        a.params,
        a.fingerprint,
    )


def vectork_insert(
    sample: VectorKSample,
    keys: "KeysLike",
    hasher: "Hasher",
    *,
    backend: "Backend" = None,
) -> VectorKSample:
    added = vectork_build(keys, hasher, sample.k, fill=sample.fill, backend=backend)
    return vectork_union(sample, added)


def jaccard_estimate(a: VectorKSample, b: VectorKSample) -> float:
    """Fraction of buckets holding the same min-key, over buckets filled in both."""
    check_mergeable(a, b)
    if a.fill != b.fill:
        raise ParameterError(f"Cannot compare samples with fill {a.fill} and {b.fill}.")
    both = a.occupied & b.occupied
    filled = int(np.count_nonzero(both))
    if filled == 0:
        raise InputError("No bucket is filled in both samples.")
    return int(np.count_nonzero(both & (a.keys == b.keys))) / filled


def signed_projection(sample: VectorKSample) -> np.ndarray:
    """Map each min-key to ``+-1/sqrt(k)`` by the lowest bit of its hash value."""
    if sample.holes:
        raise UnsupportedError(
            f"The sample has {sample.holes} empty buckets; fill them before projecting."
        )
    signs = np.where(sample.hashes & np.uint64(1), 1.0, -1.0)
    return signs / math.sqrt(sample.k)
