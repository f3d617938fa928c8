import typing as tp
from pathlib import Path

import numpy as np

from tornadotab.core.errors import InputError
from tornadotab.core.utils import as_keys

from ._tabulation import hash_keys

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend, KeysLike

    from ._tabulation import Hasher


def _hex_width(bits: int) -> int:
    return (bits + 3) // 4


def format_golden(
    hasher: "Hasher", keys: "KeysLike", *, backend: "Backend" = None
) -> str:
    """Render ``hex_key hex_hash`` lines for the given keys."""
    p = hasher.params
    arr, _ = as_keys(keys, p.key_bits)
    hashes = np.atleast_1d(hash_keys(hasher, arr, backend=backend))
    kw, hw = _hex_width(p.key_bits), _hex_width(p.range_bits)
    return "".join(
        f"{k:0{kw}x} {h:0{hw}x}\n" for k, h in zip(arr.tolist(), hashes.tolist())
    )


def write_golden(
    path: "str | Path",
    hasher: "Hasher",
    keys: "KeysLike",
    *,
    backend: "Backend" = None,
) -> None:
    Path(path).write_text(format_golden(hasher, keys, backend=backend))


def read_golden(path: "str | Path") -> tuple[np.ndarray, np.ndarray]:
    """Read a golden vector file into arrays of keys and hashes."""
    keys, hashes = [], []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, value = line.split()
            keys.append(int(key, 16))
            hashes.append(int(value, 16))
        except ValueError as err:
            raise InputError(f"{path}:{lineno}: expected 'hex_key hex_hash'.") from err
    return np.array(keys, dtype=np.uint64), np.array(hashes, dtype=np.uint64)
