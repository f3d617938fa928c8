import typing as tp

from tornadotab.core import sketches

if tp.TYPE_CHECKING:
    from fractions import Fraction

    import numpy as np

    from tornadotab.core.hashing import Hasher
    from tornadotab.core.sketches import (
        BottomKSketch,
        KPartitionMinSketch,
        Predicate,
        VectorKSample,
    )
    from tornadotab.core.typing import Backend, KeysLike


def threshold_sample(
    keys: "KeysLike",
    hasher: "Hasher",
    p: "Fraction | float | str",
    /,
    *,
    backend: "Backend" = None,
) -> "np.ndarray":
    r"""Sample the keys with $h(x) < p \cdot 2^r$.

    The probability must be dyadic, $p = a/2^t$ with $t$ at most the number of
    hash bits $r$. Threshold samples of the same hash function merge by union:
    $S_p(A \cup B) = S_p(A) \cup S_p(B)$.
    """
    return sketches.threshold_sample(keys, hasher, p, backend=backend)


def bottomk_build(
    keys: "KeysLike",
    hasher: "Hasher",
    k: int,
    /,
    *,
    backend: "Backend" = None,
) -> "BottomKSketch":
    r"""Bottom-k sketch: the $k$ keys with the smallest hash values and $h_{(k+1)}$.

    Sketches merge exactly, $S^k(A \cup B) = S^k(S^k(A) \cup S^k(B))$; hash
    ties are broken by key.

    Parameters
    ----------
    keys: array_like
        The key set.
    hasher: Hasher
        Hash function shared by all sketches that are merged.
    k: int
        Sample size.
    backend: str
        The name of the backend used for hashing.

    Returns
    -------
    sketch: BottomKSketch
        The sketch.
    """
    return sketches.bottomk_build(keys, hasher, k, backend=backend)


def bottomk_distinct_estimate(sketch: "BottomKSketch", /) -> float:
    r"""Estimate the number of distinct keys as $k / h_{(k+1)}$.

    Hash values are read as fractions of $2^r$. With at most $k$ keys the
    sketch holds all of them and the count is exact.
    """
    return sketches.bottomk_distinct_estimate(sketch)


def kpm_build(
    keys: "KeysLike",
    hasher: "Hasher",
    k: int,
    /,
    *,
    backend: "Backend" = None,
) -> "KPartitionMinSketch":
    """k-partition-min sketch storing the leading zeros of each bucket's minimum.

    The top ``log2(k)`` hash bits choose the bucket. The register keeps the
    largest number of leading zeros of the remaining local hash bits.
    """
    return sketches.kpm_build(keys, hasher, k, backend=backend)


def kpm_estimate(sketch: "KPartitionMinSketch", /) -> float:
    r"""HyperLogLog estimate of the number of distinct keys.

    $$E = \alpha_k k^2 \Big/ \sum_j 2^{-(M_j + 1)}$$

    with linear counting $k\ln(k/V)$ while it stays below $2.5k$, where $V$ is
    the number of empty registers. The estimate is non-decreasing in every register.
    """
    return sketches.kpm_estimate(sketch)


def vectork_build(
    keys: "KeysLike",
    hasher: "Hasher",
    k: int,
    target_error_p: float | None = None,
    /,
    *,
    fill: int | None = None,
    backend: "Backend" = None,
) -> "VectorKSample":
    r"""Vector-k sample: the min-key of each of $k$ buckets.

    To fill the holes, every key $x$ is hashed as the indexed keys
    $(x, j)$, $j < J$, with $J = \max(1, \lceil k\ln(k/P)/|A|\rceil)$ for the
    target hole probability $P$. The index is the first character, so the hash
    function needs one character more than the keys.

    Parameters
    ----------
    keys: array_like
        The key set.
    hasher: Hasher
        Hash function with ``c`` one larger than the key length.
    k: int
        Number of buckets.
    target_error_p: float, optional
        Target probability of holes.
    fill: int, optional
        Explicit replication count $J$.
    backend: str
        The name of the backend used for hashing.

    Returns
    -------
    sample: VectorKSample
        The sample; ``holes`` counts the buckets that stayed empty.
    """
    return sketches.vectork_build(
        keys, hasher, k, target_error_p, fill=fill, backend=backend
    )


def jaccard_estimate(a: "VectorKSample", b: "VectorKSample", /) -> float:
    r"""Estimate $|A \cap B| / |A \cup B|$ by the fraction of equal min-keys.

    Buckets that are empty in either sample are left out.
    """
    return sketches.jaccard_estimate(a, b)


def signed_projection(sample: "VectorKSample", /) -> "np.ndarray":
    r"""Map every min-key to $\pm 1/\sqrt{k}$.

    The dot product of two projections estimates the Jaccard similarity.
    """
    return sketches.signed_projection(sample)


def frequency_estimate(sample: "np.ndarray", predicate: "Predicate", /) -> float:
    r"""Estimate the frequency of a subset $B$ as $|B \cap S| / |S|$."""
    return sketches.frequency_estimate(sample, predicate)


__all__ = [
    "bottomk_build",
    "bottomk_distinct_estimate",
    "frequency_estimate",
    "jaccard_estimate",
    "kpm_build",
    "kpm_estimate",
    "signed_projection",
    "threshold_sample",
    "vectork_build",
]
