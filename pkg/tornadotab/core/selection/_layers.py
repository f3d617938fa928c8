import csv
import typing as tp
from dataclasses import dataclass
from pathlib import Path

import numpy as np

if tp.TYPE_CHECKING:
    from ._select import BucketDecomposition


@dataclass(frozen=True, eq=False)
class LayerProfile:
    """Layer sizes ``s_i[i-1] = S_i``, the number of buckets holding at least ``i`` keys."""

    s_i: np.ndarray

    @property
    def max_bucket(self) -> int:
        return int(self.s_i.shape[0])

    @property
    def total(self) -> int:
        return int(self.s_i.sum())

    def layer(self, i: int) -> int:
        """``S_i`` for ``i >= 1``; zero above the largest bucket."""
        if i < 1:
            raise ValueError("Layers are indexed from 1.")
        return int(self.s_i[i - 1]) if i <= self.max_bucket else 0

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(length, dtype=np.int64)
        m = min(length, self.max_bucket)
        out[:m] = self.s_i[:m]
        return out


def profile_from_sizes(sizes: np.ndarray) -> LayerProfile:
    sizes = np.asarray(sizes, dtype=np.int64)
    if sizes.size == 0 or sizes.max() == 0:
        return LayerProfile(np.zeros(0, dtype=np.int64))
    # S_i is the tail sum of the bucket size histogram from i on
    hist = np.bincount(sizes)
    tail = np.cumsum(hist[::-1])[::-1]
    return LayerProfile(tail[1:].astype(np.int64))


def layer_profile(b: "BucketDecomposition") -> LayerProfile:
    return profile_from_sizes(b.sizes)


def write_layer_csv(
    path: "str | Path",
    profiles: "tp.Iterable[LayerProfile] | tp.Mapping[int, LayerProfile]",
) -> None:
    """Write ``trial,i,S_i`` rows, one per non-zero layer."""
    items = profiles.items() if isinstance(profiles, tp.Mapping) else enumerate(profiles)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["trial", "i", "S_i"])
        for trial, profile in items:
            for i, s in enumerate(profile.s_i.tolist(), start=1):
                if s:
                    writer.writerow([trial, i, s])
