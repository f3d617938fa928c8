import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tornadotab.core.errors import ParameterError, UnsupportedError
from tornadotab.core.hashing import TornadoHasher, hash_keys, tornado_derive
from tornadotab.core.utils import as_keys, top_bits

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import Hasher
    from tornadotab.core.typing import Backend, KeysLike


@dataclass(frozen=True)
class Selector:
    """Select the keys whose ``t`` most significant hash bits equal ``mask_value``."""

    t: int
    mask_value: int = 0

    def __post_init__(self):
        if not isinstance(self.t, int) or self.t < 0:
            raise ParameterError(f"t must be a non-negative integer, got {self.t!r}.")
        if not isinstance(self.mask_value, int) or not 0 <= self.mask_value < 1 << self.t:
            raise ParameterError(
                f"mask_value must lie in [0, 2**{self.t}), got {self.mask_value!r}."
            )

    def check(self, range_bits: int) -> None:
        if self.t > range_bits:
            raise ParameterError(
                f"Cannot select on {self.t} bits of a {range_bits}-bit hash value."
            )

    def matches(self, hashes: np.ndarray, range_bits: int) -> np.ndarray:
        self.check(range_bits)
        return top_bits(hashes, self.t, range_bits) == np.uint64(self.mask_value)


@dataclass(frozen=True, eq=False)
class SelectionResult:
    """The selected keys with their hash values.

    ``n`` is the number of distinct input keys and ``mu = n / 2**t`` the
    expected number of selected keys, kept as an exact fraction.
    """

    selected: np.ndarray
    hashes: np.ndarray
    n: int
    mu: Fraction

    @property
    def size(self) -> int:
        return int(self.selected.shape[0])


@dataclass(frozen=True, eq=False)
class BucketDecomposition:
    """Selected keys grouped by the last character of their derived key."""

    keys: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray

    @property
    def total(self) -> int:
        return int(self.keys.shape[0])

    @property
    def buckets(self) -> dict[int, np.ndarray]:
        """Map from character to the keys of its non-empty bucket."""
        return {
            int(alpha): self.keys[self.labels == alpha]
            for alpha in np.flatnonzero(self.sizes)
        }


def select(
    keys: "KeysLike",
    hasher: "Hasher",
    selector: Selector,
    *,
    backend: "Backend" = None,
) -> SelectionResult:
    p = hasher.params
    selector.check(p.range_bits)
    arr, _ = as_keys(keys, p.key_bits)
    arr = np.unique(arr)
    hashes = np.atleast_1d(hash_keys(hasher, arr, backend=backend))
    chosen = selector.matches(hashes, p.range_bits)
    n = int(arr.shape[0])
    return SelectionResult(arr[chosen], hashes[chosen], n, Fraction(n, 1 << selector.t))


def buckets_by_last_char(
    result: SelectionResult,
    hasher: TornadoHasher,
    *,
    backend: "Backend" = None,
) -> BucketDecomposition:
    if not isinstance(hasher, TornadoHasher) or hasher.params.d < 1:
        raise UnsupportedError("Buckets need a tornado hash function with d >= 1.")
    sigma = hasher.params.sigma_size
    if result.size:
        labels = np.atleast_2d(tornado_derive(hasher, result.selected, backend=backend))
        labels = np.ascontiguousarray(labels[:, -1])
    else:
        labels = np.zeros(0, dtype=np.uint64)
    sizes = np.bincount(labels.astype(np.int64), minlength=sigma)
    return BucketDecomposition(result.selected, labels, sizes)
