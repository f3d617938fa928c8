import typing as tp

import numpy as np

from tornadotab.core.errors import InputError
from tornadotab.core.utils import as_dyadic

from ._common import hashed_keys

if tp.TYPE_CHECKING:
    from fractions import Fraction

    from tornadotab.core.hashing import Hasher
    from tornadotab.core.typing import Backend, KeysLike

Predicate = tp.Callable[[np.ndarray], np.ndarray]


def threshold_sample(
    keys: "KeysLike",
    hasher: "Hasher",
    p: "Fraction | float | str",
    *,
    backend: "Backend" = None,
) -> np.ndarray:
    """The keys with ``h(x) < p * 2**range_bits``, in ascending key order."""
    r = hasher.params.range_bits
    frac = as_dyadic(p, r)
    arr, hashes = hashed_keys(keys, hasher, backend)
    if frac == 1:
        return arr
    limit = np.uint64(frac.numerator * (1 << r) // frac.denominator)
    return arr[hashes < limit]


def _matches(sample: np.ndarray, predicate: Predicate) -> int:
    sample = np.asarray(sample, dtype=np.uint64)
    if sample.size == 0:
        return 0
    return int(np.count_nonzero(np.asarray(predicate(sample), dtype=bool)))


def threshold_intersection_estimate(
    sample: np.ndarray, predicate: Predicate, p: "Fraction | float | str"
) -> float:
    """``|S_p(A) & B| / p`` for the subset ``B`` given by ``predicate``."""
    frac = as_dyadic(p, 64)
    if frac == 0:
        raise InputError("The sampling probability must be positive.")
    return _matches(sample, predicate) / float(frac)


def frequency_estimate(sample: np.ndarray, predicate: Predicate) -> float:
    """Fraction ``|B & S| / |S|`` of the sample lying in ``B``."""
    sample = np.asarray(sample)
    if sample.size == 0:
        raise InputError("Cannot estimate a frequency from an empty sample.")
    return _matches(sample, predicate) / sample.size
