import typing as tp

from tornadotab.core import selection

if tp.TYPE_CHECKING:
    from pathlib import Path

    from tornadotab.core.hashing import Hasher, TornadoHasher
    from tornadotab.core.selection import (
        BucketDecomposition,
        HbarFixture,
        LayerExpectation,
        LayerProfile,
        SelectionResult,
        Selector,
    )
    from tornadotab.core.typing import Backend, KeysLike


def select(
    keys: "KeysLike",
    hasher: "Hasher",
    selector: "Selector",
    /,
    *,
    backend: "Backend" = None,
) -> "SelectionResult":
    r"""Select the keys whose select bits match a fixed bitmask.

    The select bits are the $t$ most significant bits of the hash value. A key
    is selected iff they equal ``selector.mask_value``, so that

    $$X = \{x \in A : h(x) \gg (r - t) = v\}, \qquad \mu = |A| / 2^t.$$

    Threshold sampling with a dyadic probability $2^{-t}$ is the case $v = 0$.

    Parameters
    ----------
    keys: array_like
        The key set; duplicates are removed.
    hasher: Hasher
        Any hash function with at least ``t`` bits of hash value.
    selector: Selector
        The number of select bits ``t`` and the bitmask.
    backend: str
        The name of the backend used for hashing.

    Returns
    -------
    result: SelectionResult
        The selected keys, their hash values and the exact expectation ``mu``.
    """
    return selection.select(keys, hasher, selector, backend=backend)


def buckets_by_last_char(
    result: "SelectionResult",
    hasher: "TornadoHasher",
    /,
    *,
    backend: "Backend" = None,
) -> "BucketDecomposition":
    r"""Group the selected keys by the last character of their derived key.

    The bucket of character $\alpha$ is $X_\alpha = \{x \in X : \tilde x_{c+d} = \alpha\}$.
    The buckets partition $X$.
    """
    return selection.buckets_by_last_char(result, hasher, backend=backend)


def layer_profile(buckets: "BucketDecomposition", /) -> "LayerProfile":
    r"""Compute the layer sizes $S_i = |\{\alpha : |X_\alpha| \geq i\}|$.

    The layers are non-increasing in $i$ and $\sum_i S_i = |X|$.
    """
    return selection.layer_profile(buckets)


def make_hbar_fixture(
    hasher: "TornadoHasher",
    keys: "KeysLike",
    selector: "Selector",
    /,
    *,
    backend: "Backend" = None,
) -> "HbarFixture":
    """Freeze everything but the last lookup table of a tornado hash function."""
    return selection.make_hbar_fixture(hasher, keys, selector, backend=backend)


def conditional_expectation_estimate(
    fixture: "HbarFixture", trials: int, /, *, seed: int = 0
) -> "LayerExpectation":
    r"""Estimate $E[S_i \mid \bar h]$ by resampling the last lookup table.

    Only the last table is redrawn in every trial. Given $\bar h$ the bucket
    sizes $|X_\alpha|$ are then independent across $\alpha$.

    Parameters
    ----------
    fixture: HbarFixture
        Keys and hash function with $\bar h$ frozen.
    trials: int
        Number of resampled last tables.
    seed: int
        Seed of the resampled tables.

    Returns
    -------
    estimate: LayerExpectation
        Mean layer sizes, mean selection size and its standard error.
    """
    return selection.conditional_expectation_estimate(fixture, trials, seed=seed)


def conditional_expectation_exact(fixture: "HbarFixture", /) -> "LayerExpectation":
    r"""Exact $E[S_i \mid \bar h]$ and $E[|X| \mid \bar h]$ as fractions."""
    return selection.conditional_expectation_exact(fixture)


def write_layer_csv(path: "str | Path", profiles, /) -> None:
    """Write layer profiles as ``trial,i,S_i`` rows, one per non-zero layer."""
    selection.write_layer_csv(path, profiles)


__all__ = [
    "buckets_by_last_char",
    "conditional_expectation_estimate",
    "conditional_expectation_exact",
    "layer_profile",
    "make_hbar_fixture",
    "select",
    "write_layer_csv",
]
