import typing as tp
from fractions import Fraction

import numpy as np

from tornadotab.backend import backends
from tornadotab.core.errors import InputError, ParameterError, UnsupportedError

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend, KeysLike


def hashing_backend(backend: "Backend") -> str:
    """Resolve the backend name for array hashing, which runs on numpy or numba."""
    name = backends.resolve(backend)
    if not backends[name].supports_arrays:
        raise UnsupportedError(
            f"The '{name}' backend does not support hashing; use 'numpy' or 'numba'."
        )
    return name


def as_keys(keys: "KeysLike", key_bits: int) -> tuple[np.ndarray, bool]:
    """Convert keys to a 1-D uint64 array and check that they fit ``key_bits`` bits.

    Returns the array and whether the input was a scalar.
    """
    scalar = np.ndim(keys) == 0
    arr = np.asarray(keys)
    if arr.dtype == object:
        values = [int(k) for k in arr.ravel()]
        if any(k < 0 or k >= 1 << 64 for k in values):
            raise InputError("Keys must be non-negative and fit 64 bits.")
        arr = np.array(values, dtype=np.uint64).reshape(arr.shape)
    elif arr.dtype.kind == "i":
        if np.any(arr < 0):
            raise InputError("Keys must be non-negative.")
        arr = arr.astype(np.uint64)
    elif arr.dtype.kind == "b" or arr.size == 0:
        arr = arr.astype(np.uint64)
    elif arr.dtype.kind != "u":
        raise InputError(f"Keys must be integers, got dtype {arr.dtype}.")
    arr = np.atleast_1d(arr.astype(np.uint64, copy=False))
    if arr.ndim != 1:
        raise InputError("Keys must be a scalar or a one-dimensional array.")
    if key_bits < 64 and np.any(arr >> np.uint64(key_bits)):
        raise InputError(
            f"Key character out of range: keys must be below 2**{key_bits}."
        )
    return arr, scalar


def as_dyadic(p: "Fraction | float | int | str", range_bits: int) -> Fraction:
    """Interpret ``p`` as a dyadic rational a/2^t with t <= ``range_bits``."""
    try:
        frac = Fraction(p)
    except (TypeError, ValueError) as err:
        raise ParameterError(f"Cannot interpret {p!r} as a probability.") from err
    if frac < 0 or frac > 1:
        raise ParameterError(f"Sampling probability must lie in [0, 1], got {p}.")
    den = frac.denominator
    if den & (den - 1) or den.bit_length() - 1 > range_bits:
        raise ParameterError(
            f"Sampling probability {p} is not of the form a/2^t with t <= {range_bits}."
        )
    return frac


def bit_length(x: np.ndarray) -> np.ndarray:
    """Number of significant bits of each element of a uint64 array."""
    v = np.array(x, dtype=np.uint64, copy=True)
    out = np.zeros(v.shape, dtype=np.int64)
    for shift in (32, 16, 8, 4, 2, 1):
        big = (v >> np.uint64(shift)) != 0
        out[big] += shift
        v[big] >>= np.uint64(shift)
    out += (v != 0).astype(np.int64)
    return out


def top_bits(h: np.ndarray, bits: int, range_bits: int) -> np.ndarray:
    """The ``bits`` most significant bits of ``range_bits``-bit hash values."""
    if bits == 0:
        return np.zeros(h.shape, dtype=np.uint64)
    return h >> np.uint64(range_bits - bits)
