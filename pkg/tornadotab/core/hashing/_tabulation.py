import hashlib
import logging
import threading
import typing as tp
from dataclasses import dataclass, field

import numpy as np

from tornadotab.core.errors import InputError, ParameterError, UnsupportedError
from tornadotab.core.utils import as_keys, hashing_backend

from ._params import HashParams
from ._prng import (
    ROLE_DERIVE,
    ROLE_ORACLE,
    ROLE_SIMPLE,
    ROLE_TOP,
    ROLE_TWIST,
    fill_table,
    random_words,
    seed_key,
)

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend, Key, KeysLike

logger = logging.getLogger(__name__)


def _readonly(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.uint64, copy=True)
    arr.setflags(write=False)
    return arr


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < 1 << 64:
        raise ParameterError(f"Seeds must be integers in [0, 2**64), got {seed!r}.")
    return int(seed)


def _check_table(name: str, table: np.ndarray, shape: tuple, bits: int) -> None:
    if table.shape != shape:
        raise ParameterError(f"{name} must have shape {shape}, got {table.shape}.")
    if bits < 64 and np.any(table >> np.uint64(bits)):
        raise ParameterError(f"{name} entries must fit {bits} bits.")


def _fill(seed, role, table, sub, size, bits, backend) -> np.ndarray:
    if backend == "numba":
        from ._gufuncs import _fill_table_nb

        k0, k1 = seed_key(seed)
        return _fill_table_nb(
            size, np.uint64(table), np.uint64(role), np.uint64(sub), k0, k1, bits
        )
    return fill_table(seed, role, table, sub, size, bits)


@dataclass(frozen=True, eq=False)
class SimpleTabulation:
    """Simple tabulation: the XOR of one random table lookup per key character."""

    params: HashParams
    tables: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        p = self.params
        object.__setattr__(self, "tables", _readonly(self.tables))
        _check_table("tables", self.tables, (p.c, p.sigma_size), p.range_bits)

    def hash(self, keys: "KeysLike", *, backend: "Backend" = None):
        return simple_tab_hash(self, keys, backend=backend)


@dataclass(frozen=True, eq=False)
class TornadoHasher:
    """Tornado tabulation hash function.

    ``twist_tables`` hold the simple tabulation over the first ``c-1`` characters
    that twists character ``c``. ``derive_tables[i]`` is the simple tabulation over
    the first ``c+i`` derived characters producing derived character ``c+i+1``;
    rows beyond ``c+i`` are unused and zero. ``top_tables`` are the ``c+d`` tables
    of the final simple tabulation.
    """

    params: HashParams
    twist_tables: np.ndarray
    derive_tables: np.ndarray
    top_tables: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        p = self.params
        s = p.sigma_size
        for name in ("twist_tables", "derive_tables", "top_tables"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        _check_table("twist_tables", self.twist_tables, (p.c - 1, s), p.char_bits)
        _check_table(
            "derive_tables", self.derive_tables, (p.d, p.c + p.d - 1, s), p.char_bits
        )
        _check_table("top_tables", self.top_tables, (p.c + p.d, s), p.range_bits)

    @property
    def last_table(self) -> np.ndarray:
        return self.top_tables[-1]

    def hash(self, keys: "KeysLike", *, backend: "Backend" = None):
        return tornado_hash(self, keys, backend=backend)


@dataclass(eq=False)
class RandomOracle:
    """Fully random hash function used as the baseline.

    The value of a key is a pure function of ``(seed, key)`` through the counter
    based generator, so every caller observes one value per key. Scalar lookups
    are memoised under a lock.
    """

    params: HashParams
    seed: int
    memo: dict[int, int] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def hash(self, keys: "KeysLike", *, backend: "Backend" = None):
        return oracle_hash(self, keys, backend=backend)


Hasher = SimpleTabulation | TornadoHasher | RandomOracle


def simple_tab_new(
    seed: int, params: HashParams, *, backend: "Backend" = None
) -> SimpleTabulation:
    seed = _check_seed(seed)
    backend = hashing_backend(backend)
    tables = np.stack(
        [
            _fill(seed, ROLE_SIMPLE, 0, j, params.sigma_size, params.range_bits, backend)
            for j in range(params.c)
        ]
    )
    return SimpleTabulation(params, tables, seed)


def tornado_new(
    seed: int, params: HashParams, *, backend: "Backend" = None
) -> TornadoHasher:
    seed = _check_seed(seed)
    backend = hashing_backend(backend)
    c, d, s = params.c, params.d, params.sigma_size
    logger.debug(
        "Filling tornado tables for %s with seed %d (%d entries)",
        params,
        seed,
        params.table_entries(),
    )
    twist = np.zeros((c - 1, s), dtype=np.uint64)
    for j in range(c - 1):
        twist[j] = _fill(seed, ROLE_TWIST, 0, j, s, params.char_bits, backend)
    derive = np.zeros((d, c + d - 1, s), dtype=np.uint64)
    for i in range(d):
        for j in range(c + i):
            derive[i, j] = _fill(seed, ROLE_DERIVE, i, j, s, params.char_bits, backend)
    top = np.zeros((c + d, s), dtype=np.uint64)
    for j in range(c + d):
        top[j] = _fill(seed, ROLE_TOP, 0, j, s, params.range_bits, backend)
    return TornadoHasher(params, twist, derive, top, seed)


def oracle_new(seed: int, params: HashParams) -> RandomOracle:
    return RandomOracle(params, _check_seed(seed))


def pack_keys(chars: "np.ndarray", params: HashParams) -> "Key":
    """Pack an ``(n, c)`` character array into keys, character 0 in the low bits."""
    chars = np.asarray(chars)
    if chars.ndim not in (1, 2) or chars.shape[-1] != params.c:
        raise InputError(f"Expected {params.c} characters per key.")
    if chars.size and (np.any(chars < 0) or np.any(chars >= params.sigma_size)):
        raise InputError(f"Characters must lie in [0, {params.sigma_size}).")
    chars = chars.astype(np.uint64)
    shifts = np.arange(params.c, dtype=np.uint64) * np.uint64(params.char_bits)
    keys = np.bitwise_or.reduce(chars << shifts, axis=-1)
    return keys


def unpack_keys(keys: "KeysLike", params: HashParams) -> np.ndarray:
    """Characters of packed keys as an ``(n, c)`` uint64 array (``(c,)`` for a scalar)."""
    arr, scalar = as_keys(keys, params.key_bits)
    shifts = np.arange(params.c, dtype=np.uint64) * np.uint64(params.char_bits)
    mask = np.uint64(params.sigma_size - 1)
    chars = (arr[:, None] >> shifts) & mask
    return chars[0] if scalar else chars


def _scalar_or_array(values: np.ndarray, scalar: bool):
    return values[0] if scalar else values


def _tabulate(chars: np.ndarray, tables: np.ndarray, backend: str) -> np.ndarray:
    if chars.shape[1] == 0:
        return np.zeros(chars.shape[0], dtype=np.uint64)
    if backend == "numba":
        from ._gufuncs import _tabulate_gufunc

        return _tabulate_gufunc(np.ascontiguousarray(chars), tables)
    h = np.zeros(chars.shape[0], dtype=np.uint64)
    for j in range(chars.shape[1]):
        h ^= tables[j][chars[:, j]]
    return h


def _derive(h: TornadoHasher, chars: np.ndarray, backend: str) -> np.ndarray:
    if backend == "numba":
        from ._gufuncs import _derive_nb

        return _derive_nb(np.ascontiguousarray(chars), h.twist_tables, h.derive_tables)
    c, d = h.params.c, h.params.d
    out = np.empty((chars.shape[0], c + d), dtype=np.uint64)
    out[:, :c] = chars
    out[:, c - 1] ^= _tabulate(chars[:, : c - 1], h.twist_tables, backend)
    for i in range(d):
        out[:, c + i] = _tabulate(out[:, : c + i], h.derive_tables[i], backend)
    return out


def simple_tab_hash(
    h: SimpleTabulation, keys: "KeysLike", *, backend: "Backend" = None
):
    backend = hashing_backend(backend)
    arr, scalar = as_keys(keys, h.params.key_bits)
    chars = unpack_keys(arr, h.params)
    return _scalar_or_array(_tabulate(chars, h.tables, backend), scalar)


def tornado_derive(h: TornadoHasher, keys: "KeysLike", *, backend: "Backend" = None):
    backend = hashing_backend(backend)
    arr, scalar = as_keys(keys, h.params.key_bits)
    derived = _derive(h, unpack_keys(arr, h.params), backend)
    return _scalar_or_array(derived, scalar)


def tornado_hash(h: TornadoHasher, keys: "KeysLike", *, backend: "Backend" = None):
    backend = hashing_backend(backend)
    arr, scalar = as_keys(keys, h.params.key_bits)
    derived = _derive(h, unpack_keys(arr, h.params), backend)
    return _scalar_or_array(_tabulate(derived, h.top_tables, backend), scalar)


def tornado_split(h: TornadoHasher, keys: "KeysLike", *, backend: "Backend" = None):
    """Split hashes into ``hbar0`` and the last derived character ``hbar1``."""
    if h.params.d < 1:
        raise UnsupportedError("The split needs at least one derived character (d >= 1).")
    backend = hashing_backend(backend)
    arr, scalar = as_keys(keys, h.params.key_bits)
    derived = _derive(h, unpack_keys(arr, h.params), backend)
    hbar0 = _tabulate(derived[:, :-1], h.top_tables[:-1], backend)
    hbar1 = np.ascontiguousarray(derived[:, -1])
    return _scalar_or_array(hbar0, scalar), _scalar_or_array(hbar1, scalar)


def _combined_tables(h: TornadoHasher) -> list[list[int]]:
    """Lookup tables that return every contribution of a character at once.

    The low ``(d+1)`` character slots of an entry accumulate the twist and the
    derived characters, the final hash sits above them. Positions from ``c-1`` on
    are laid out for an accumulator that has been shifted once per consumed slot.
    """
    p = h.params
    c, d, w = p.c, p.d, p.char_bits
    twist = h.twist_tables.tolist()
    derive = h.derive_tables.tolist()
    top = h.top_tables.tolist()
    tables = []
    for j in range(c - 1):
        column = []
        for ch in range(p.sigma_size):
            v = twist[j][ch] | top[j][ch] << ((d + 1) * w)
            for i in range(1, d + 1):
                v |= derive[i - 1][j][ch] << (i * w)
            column.append(v)
        tables.append(column)
    for m in range(d + 1):
        j = c - 1 + m
        column = []
        for ch in range(p.sigma_size):
            v = top[j][ch] << ((d - m) * w)
            for i in range(m + 1, d + 1):
                v |= derive[i - 1][j][ch] << ((i - m - 1) * w)
            column.append(v)
        tables.append(column)
    return tables


def tornado_hash_combined(h: TornadoHasher, keys: "KeysLike"):
    """Evaluate the tornado hash with one combined lookup per derived position.

    This is the evaluation order of the 64-bit reference implementation: consume
    ``c-1`` characters, XOR the remaining character into the accumulator to get
    the twisted character, then repeatedly peel off the next derived character.
    """
    p = h.params
    arr, scalar = as_keys(keys, p.key_bits)
    tables = _combined_tables(h)
    w, mask = p.char_bits, p.sigma_size - 1
    out = np.empty(arr.shape[0], dtype=np.uint64)
    for n, x in enumerate(arr.tolist()):
        acc = 0
        for j in range(p.c - 1):
            acc ^= tables[j][x & mask]
            x >>= w
        acc ^= x
        for j in range(p.c - 1, p.c + p.d):
            ch = acc & mask
            acc >>= w
            acc ^= tables[j][ch]
        out[n] = acc
    return _scalar_or_array(out, scalar)


def oracle_hash(o: RandomOracle, keys: "KeysLike", *, backend: "Backend" = None):
    hashing_backend(backend)
    arr, scalar = as_keys(keys, o.params.key_bits)
    if scalar:
        key = int(arr[0])
        with o._lock:
            if key not in o.memo:
                o.memo[key] = int(_oracle_values(o, arr)[0])
            return np.uint64(o.memo[key])
    return _oracle_values(o, arr)


def _oracle_values(o: RandomOracle, arr: np.ndarray) -> np.ndarray:
    counter = (arr, arr >> np.uint64(32), ROLE_ORACLE, 0)
    return random_words(counter, seed_key(o.seed), o.params.range_bits)


def hash_keys(hasher: "Hasher", keys: "KeysLike", *, backend: "Backend" = None):
    """Hash keys with any of the supported hash functions."""
    if isinstance(hasher, TornadoHasher):
        return tornado_hash(hasher, keys, backend=backend)
    if isinstance(hasher, SimpleTabulation):
        return simple_tab_hash(hasher, keys, backend=backend)
    if isinstance(hasher, RandomOracle):
        return oracle_hash(hasher, keys, backend=backend)
    raise ParameterError(f"Unsupported hash function {type(hasher).__name__}.")


def hasher_fingerprint(hasher: "Hasher") -> int:
    """64-bit fingerprint of the hash function's scheme, parameters and seed."""
    p = hasher.params
    digest = hashlib.sha256(
        f"{type(hasher).__name__}|{p.c}|{p.d}|{p.char_bits}|{p.range_bits}".encode()
    )
    if hasher.seed is not None:
        digest.update(f"|seed={hasher.seed}".encode())
    else:
        for name in ("tables", "twist_tables", "derive_tables", "top_tables"):
            if hasattr(hasher, name):
                digest.update(getattr(hasher, name).tobytes())
    return int.from_bytes(digest.digest()[:8], "little")
