from ._golden import format_golden, read_golden, write_golden
from ._params import HashParams
from ._prng import fill_table, philox4x32
from ._tabulation import (
    Hasher,
    RandomOracle,
    SimpleTabulation,
    TornadoHasher,
    hash_keys,
    hasher_fingerprint,
    oracle_hash,
    oracle_new,
    pack_keys,
    simple_tab_hash,
    simple_tab_new,
    tornado_derive,
    tornado_hash,
    tornado_hash_combined,
    tornado_new,
    tornado_split,
    unpack_keys,
)

__all__ = [
    "HashParams",
    "Hasher",
    "RandomOracle",
    "SimpleTabulation",
    "TornadoHasher",
    "fill_table",
    "format_golden",
    "hash_keys",
    "hasher_fingerprint",
    "oracle_hash",
    "oracle_new",
    "pack_keys",
    "philox4x32",
    "read_golden",
    "simple_tab_hash",
    "simple_tab_new",
    "tornado_derive",
    "tornado_hash",
    "tornado_hash_combined",
    "tornado_new",
    "tornado_split",
    "unpack_keys",
    "write_golden",
]
