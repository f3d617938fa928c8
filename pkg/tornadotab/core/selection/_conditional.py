import logging
import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tornadotab.core.errors import ParameterError
from tornadotab.core.hashing import TornadoHasher, tornado_split
from tornadotab.core.hashing._prng import ROLE_RESAMPLE, fill_table
from tornadotab.core.utils import as_keys, top_bits

from ._layers import LayerProfile, profile_from_sizes
from ._select import Selector

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend, KeysLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HbarFixture:
    """A key set whose hash values are fixed up to the last lookup table.

    ``hbar0`` is the hash without the last lookup and ``hbar1`` the last derived
    character, so that ``h(x) = hbar0[x] ^ T[hbar1[x]]`` for the last table ``T``.
    """

    hasher: TornadoHasher
    keys: np.ndarray
    selector: Selector
    hbar0: np.ndarray
    hbar1: np.ndarray

    @property
    def n(self) -> int:
        return int(self.keys.shape[0])

    @property
    def mu(self) -> Fraction:
        return Fraction(self.n, 1 << self.selector.t)

    def profile(self, last_table: np.ndarray) -> LayerProfile:
        """Layer profile of the selection under the given last table."""
        p = self.hasher.params
        h = self.hbar0 ^ last_table[self.hbar1]
        chosen = self.selector.matches(h, p.range_bits)
        sizes = np.bincount(self.hbar1[chosen].astype(np.int64), minlength=p.sigma_size)
        return profile_from_sizes(sizes)


@dataclass(frozen=True, eq=False)
class LayerExpectation:
    """Expected layer sizes ``E[S_i | hbar]`` and expected selection size.

    Exact evaluations carry fractions and no standard error. Resampled
    estimates carry floats and the standard error of the size estimate.
    """

    s_i: tuple
    size: "Fraction | float"
    size_sem: float | None = None
    trials: int | None = None

    def layer(self, i: int):
        return self.s_i[i - 1] if 1 <= i <= len(self.s_i) else 0


def make_hbar_fixture(
    hasher: TornadoHasher,
    keys: "KeysLike",
    selector: Selector,
    *,
    backend: "Backend" = None,
) -> HbarFixture:
    selector.check(hasher.params.range_bits)
    arr, _ = as_keys(keys, hasher.params.key_bits)
    arr = np.unique(arr)
    hbar0, hbar1 = tornado_split(hasher, arr, backend=backend)
    return HbarFixture(
        hasher, arr, selector, np.atleast_1d(hbar0), np.atleast_1d(hbar1)
    )


def resampled_last_table(fixture: HbarFixture, seed: int, trial: int) -> np.ndarray:
    p = fixture.hasher.params
    return fill_table(
        seed, ROLE_RESAMPLE, trial & 0xFFFFFFFF, trial >> 32, p.sigma_size, p.range_bits
    )


def conditional_expectation_estimate(
    fixture: HbarFixture, trials: int, *, seed: int = 0
) -> LayerExpectation:
    """Estimate ``E[S_i | hbar]`` by resampling only the last lookup table.

    Trial ``r`` draws its table from the counter based generator under ``seed``,
    so runs are reproducible and trials can be split across workers.
    """
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}.")
    profiles = [
        fixture.profile(resampled_last_table(fixture, seed, r)) for r in range(trials)
    ]
    length = max((pr.max_bucket for pr in profiles), default=0)
    layers = np.stack([pr.padded(length) for pr in profiles]).astype(np.float64)
    sizes = np.array([pr.total for pr in profiles], dtype=np.float64)
    sem = float(np.std(sizes, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    logger.debug("Resampled %d last tables for %d keys", trials, fixture.n)
    return LayerExpectation(
        tuple(layers.mean(axis=0).tolist()), float(sizes.mean()), sem, trials
    )


def conditional_expectation_exact(fixture: HbarFixture) -> LayerExpectation:
    """Exact ``E[S_i | hbar]`` over a uniformly random last table.

    A key in bucket ``alpha`` is selected iff its top select bits of ``hbar0``
    equal the mask XOR the top bits of ``T[alpha]``, which are uniform and
    independent across buckets. So ``Pr[|X_alpha| >= i]`` is the fraction of the
    ``2**t`` patterns shared by at least ``i`` keys of the bucket.
    """
    p = fixture.hasher.params
    t = fixture.selector.t
    if fixture.n == 0:
        return LayerExpectation((), Fraction(0))
    patterns = top_bits(fixture.hbar0, t, p.range_bits)
    _, counts = np.unique(np.stack([fixture.hbar1, patterns]), axis=1, return_counts=True)
    cells = np.bincount(counts)
    at_least = np.cumsum(cells[::-1])[::-1][1:]
    denom = 1 << t
    s_i = tuple(Fraction(int(v), denom) for v in at_least)
    return LayerExpectation(s_i, Fraction(fixture.n, denom))
