import typing as tp
from dataclasses import dataclass

import numpy as np

from tornadotab.core.hashing import HashParams

from ._common import (
    check_k,
    check_mergeable,
    fingerprint,
    hashed_keys,
    order_by_hash,
)
from ._threshold import Predicate, _matches

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import Hasher
    from tornadotab.core.typing import Backend, KeysLike


@dataclass(frozen=True, eq=False)
class BottomKSketch:
    """The ``k+1`` smallest ``(hash, key)`` pairs of a key set, ordered by hash then key.

    The first ``k`` pairs are the sample; the hash of pair ``k+1`` is the
    threshold ``h_(k+1)``, or None while at most ``k`` distinct keys were seen.
    """

    k: int
    hashes: np.ndarray
    keys: np.ndarray
    params: HashParams
    fingerprint: int

    @property
    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.hashes[: self.k].tolist(), self.keys[: self.k].tolist()))

    @property
    def sample(self) -> np.ndarray:
        return self.keys[: self.k]

    @property
    def threshold(self) -> int | None:
        return int(self.hashes[self.k]) if self.hashes.shape[0] > self.k else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BottomKSketch)
            and self.k == other.k
            and self.fingerprint == other.fingerprint
            and np.array_equal(self.hashes, other.hashes)
            and np.array_equal(self.keys, other.keys)
        )


def _smallest(
    k: int, hashes: np.ndarray, keys: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    _, first = np.unique(keys, return_index=True)
    hashes, keys = hashes[first], keys[first]
    order = order_by_hash(hashes, keys)[: k + 1]
    return hashes[order], keys[order]


def bottomk_new(k: int, hasher: "Hasher") -> BottomKSketch:
    check_k(k)
    empty = np.zeros(0, dtype=np.uint64)
    return BottomKSketch(k, empty, empty, hasher.params, fingerprint(hasher))


def bottomk_build(
    keys: "KeysLike", hasher: "Hasher", k: int, *, backend: "Backend" = None
) -> BottomKSketch:
    check_k(k)
    arr, hashes = hashed_keys(keys, hasher, backend)
    hashes, arr = _smallest(k, hashes, arr)
    return BottomKSketch(k, hashes, arr, hasher.params, fingerprint(hasher))


def bottomk_insert(
    sketch: BottomKSketch,
    keys: "KeysLike",
    hasher: "Hasher",
    *,
    backend: "Backend" = None,
) -> BottomKSketch:
    """Sketch of the previous keys together with ``keys``."""
    return bottomk_union(sketch, bottomk_build(keys, hasher, sketch.k, backend=backend))


def bottomk_union(a: BottomKSketch, b: BottomKSketch) -> BottomKSketch:
    check_mergeable(a, b)
    hashes, keys = _smallest(
        a.k, np.concatenate([a.hashes, b.hashes]), np.concatenate([a.keys, b.keys])
    )
    return BottomKSketch(a.k, hashes, keys, a.params, a.fingerprint)


def _threshold_fraction(sketch: BottomKSketch) -> float:
    return sketch.threshold / float(1 << sketch.params.range_bits)


def bottomk_distinct_estimate(sketch: BottomKSketch) -> float:
    """``k / (h_(k+1) / 2**range_bits)``, or the exact count below ``k+1`` keys."""
    if sketch.threshold is None:
        return float(sketch.keys.shape[0])
    if sketch.threshold == 0:
        return float("inf")
    return sketch.k / _threshold_fraction(sketch)


def bottomk_subset_estimate(sketch: BottomKSketch, predicate: Predicate) -> float:
    """``|B & S^k(A)| / h_(k+1)`` for the subset ``B`` given by ``predicate``."""
    hits = _matches(sketch.sample, predicate)
    if sketch.threshold is None:
        return float(hits)
    if sketch.threshold == 0:
        return float("inf") if hits else 0.0
    return hits / _threshold_fraction(sketch)
