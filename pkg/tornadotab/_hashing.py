import typing as tp

from tornadotab.core import hashing

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import HashParams, RandomOracle, SimpleTabulation, TornadoHasher
    from tornadotab.core.typing import Backend, DerivedKey, KeysLike


def tornado_new(
    seed: int,
    params: "HashParams",
    /,
    *,
    backend: "Backend" = None,
) -> "TornadoHasher":
    r"""Draw a tornado tabulation hash function.

    A key $x = x_1 \dots x_c$ is first expanded into the derived key
    $\tilde x = \tilde x_1 \dots \tilde x_{c+d}$: the first $c-1$ characters are
    copied, $\tilde x_c = x_c \oplus \bigoplus_{j<c} T^{tw}_j[x_j]$ is twisted and
    every further character is a simple tabulation hash of the prefix before it,

    $$\tilde x_{c+i} = \bigoplus_{j < c+i} T^{(i)}_j[\tilde x_j].$$

    The hash value is the simple tabulation $\bigoplus_j T_j[\tilde x_j]$ of the
    derived key.

    All tables are filled from a Philox-4x32-10 counter generator keyed by ``seed``,
    so the same seed and parameters give the same function on every platform.

    Parameters
    ----------
    seed: int
        Seed in ``[0, 2**64)``.
    params: HashParams
        Number of characters ``c``, derived characters ``d``, bits per character
        and bits of the hash values.
    backend: str
        The name of the backend used for filling the tables. Defaults to 'numba' if
        available, else 'numpy'.

    Returns
    -------
    hasher: TornadoHasher
        The immutable hash function.

    Examples
    --------
    >>> import tornadotab as tt
    >>> h = tt.tornado_new(42, tt.HashParams(c=4, d=3, char_bits=16))
    >>> tt.tornado_hash(h, 0x0123456789ABCDEF)
    """
    return hashing.tornado_new(seed, params, backend=backend)


def tornado_hash(
    hasher: "TornadoHasher",
    keys: "KeysLike",
    /,
    *,
    backend: "Backend" = None,
):
    """Hash packed keys with a tornado tabulation hash function.

    Parameters
    ----------
    hasher: TornadoHasher
        The hash function.
    keys: int or array_like
        Keys packed with character 1 in the lowest ``char_bits`` bits.
    backend: str
        The name of the backend used for computations. Defaults to 'numba' if
        available, else 'numpy'.

    Returns
    -------
    hashes: np.uint64 or NDArray
        A scalar for a scalar key, otherwise an array of the same length.
    """
    return hashing.tornado_hash(hasher, keys, backend=backend)


def tornado_derive(
    hasher: "TornadoHasher",
    keys: "KeysLike",
    /,
    *,
    backend: "Backend" = None,
) -> "DerivedKey":
    """Derived keys, as an ``(n, c+d)`` array of characters (``(c+d,)`` for a scalar key)."""
    return hashing.tornado_derive(hasher, keys, backend=backend)


def tornado_split(
    hasher: "TornadoHasher",
    keys: "KeysLike",
    /,
    *,
    backend: "Backend" = None,
):
    r"""Split the hash value at the last lookup table.

    Returns $\bar h_0(x)$ and $\bar h_1(x)$ with

    $$h(x) = \bar h_0(x) \oplus T_{c+d}[\bar h_1(x)],$$

    where $\bar h_1(x) = \tilde x_{c+d}$ is the last derived character. Needs $d \geq 1$.

    Parameters
    ----------
    hasher: TornadoHasher
        The hash function.
    keys: int or array_like
        Packed keys.
    backend: str
        The name of the backend used for computations.

    Returns
    -------
    hbar0, hbar1: tuple
        The hash without the last lookup and the last derived character.
    """
    return hashing.tornado_split(hasher, keys, backend=backend)


def tornado_hash_combined(hasher: "TornadoHasher", keys: "KeysLike", /):
    """Hash keys with one combined lookup per position.

    Every combined entry holds the contribution to the final hash next to the
    contributions to the derived characters that are still to come. The output
    equals ``tornado_hash``.
    """
    return hashing.tornado_hash_combined(hasher, keys)


def simple_tab_new(
    seed: int, params: "HashParams", /, *, backend: "Backend" = None
) -> "SimpleTabulation":
    r"""Draw a simple tabulation hash function $h(x) = \bigoplus_{j \leq c} T_j[x_j]$."""
    return hashing.simple_tab_new(seed, params, backend=backend)


def simple_tab_hash(
    hasher: "SimpleTabulation", keys: "KeysLike", /, *, backend: "Backend" = None
):
    return hashing.simple_tab_hash(hasher, keys, backend=backend)


def oracle_new(seed: int, params: "HashParams", /) -> "RandomOracle":
    """Draw a fully random hash function.

    Values are computed on demand from ``(seed, key)`` with the counter based
    generator, so the function is consistent across calls and processes.
    """
    return hashing.oracle_new(seed, params)


def oracle_hash(hasher: "RandomOracle", keys: "KeysLike", /, *, backend: "Backend" = None):
    return hashing.oracle_hash(hasher, keys, backend=backend)


def hash_keys(hasher, keys: "KeysLike", /, *, backend: "Backend" = None):
    """Hash keys with a tornado, simple tabulation or fully random hash function."""
    return hashing.hash_keys(hasher, keys, backend=backend)


__all__ = [
    "hash_keys",
    "oracle_hash",
    "oracle_new",
    "simple_tab_hash",
    "simple_tab_new",
    "tornado_derive",
    "tornado_hash",
    "tornado_hash_combined",
    "tornado_new",
    "tornado_split",
]
