import math
import typing as tp
from dataclasses import dataclass

import numpy as np

from tornadotab.core.hashing import HashParams
from tornadotab.core.utils import bit_length, top_bits

from ._common import check_mergeable, check_power_of_two, fingerprint, hashed_keys

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import Hasher
    from tornadotab.core.typing import Backend, KeysLike

EMPTY = -1


@dataclass(frozen=True, eq=False)
class KPartitionMinSketch:
    """Per-bucket maximum leading-zero count of the local hash values.

    The bucket of a key is given by the top ``log2(k)`` bits of its hash, the
    local hash by the remaining bits. Empty buckets hold ``-1``.
    """

    k: int
    registers: np.ndarray
    params: HashParams
    fingerprint: int

    @property
    def local_bits(self) -> int:
        return self.params.range_bits - (self.k.bit_length() - 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KPartitionMinSketch)
            and self.k == other.k
            and self.fingerprint == other.fingerprint
            and np.array_equal(self.registers, other.registers)
        )


def kpm_new(k: int, hasher: "Hasher") -> KPartitionMinSketch:
    check_power_of_two(k, hasher.params)
    registers = np.full(k, EMPTY, dtype=np.int8)
    return KPartitionMinSketch(k, registers, hasher.params, fingerprint(hasher))


def _registers(k: int, hashes: np.ndarray, params: HashParams) -> np.ndarray:
    log_k = check_power_of_two(k, params)
    local_bits = params.range_bits - log_k
    buckets = top_bits(hashes, log_k, params.range_bits).astype(np.int64)
    local = hashes & np.uint64((1 << local_bits) - 1)
    zeros = (local_bits - bit_length(local)).astype(np.int8)
    registers = np.full(k, EMPTY, dtype=np.int8)
    np.maximum.at(registers, buckets, zeros)
    return registers


def kpm_build(
    keys: "KeysLike", hasher: "Hasher", k: int, *, backend: "Backend" = None
) -> KPartitionMinSketch:
    _, hashes = hashed_keys(keys, hasher, backend)
    registers = _registers(k, hashes, hasher.params)
    return KPartitionMinSketch(k, registers, hasher.params, fingerprint(hasher))


def kpm_insert(
    sketch: KPartitionMinSketch,
    keys: "KeysLike",
    hasher: "Hasher",
    *,
    backend: "Backend" = None,
) -> KPartitionMinSketch:
    return kpm_union(sketch, kpm_build(keys, hasher, sketch.k, backend=backend))


def kpm_union(a: KPartitionMinSketch, b: KPartitionMinSketch) -> KPartitionMinSketch:
    check_mergeable(a, b)
    return KPartitionMinSketch(
        a.k, np.maximum(a.registers, b.registers), a.params, a.fingerprint
    )


def _alpha(k: int) -> float:
    return {16: 0.673, 32: 0.697, 64: 0.709}.get(k, 0.7213 / (1 + 1.079 / k))


def kpm_estimate(sketch: KPartitionMinSketch) -> float:
    """HyperLogLog estimate with linear counting for small ranges.

    Linear counting is used while it stays below ``2.5 k``; afterwards the raw
    harmonic mean estimate is floored at ``2.5 k``. Both pieces are
    non-decreasing in every register and the switch is one-way, so the
    estimate never decreases when keys are inserted.
    """
    k = sketch.k
    regs = sketch.registers.astype(np.float64)
    empty = int(np.count_nonzero(sketch.registers == EMPTY))
    if empty == k:
        return 0.0
    small = 2.5 * k
    if empty:
        linear = k * math.log(k / empty)
        if linear <= small:
            return linear
    # an empty register contributes 2**0 like a rank of zero
    raw = _alpha(k) * k * k / float(np.sum(np.exp2(-(regs + 1))))
    return max(raw, small)
