import typing as tp

from tornadotab.core import independence

if tp.TYPE_CHECKING:
    import numpy as np

    from tornadotab.core.independence import GeneralizedKey, KeyFamily


def sym_diff(family: "KeyFamily", /) -> "GeneralizedKey":
    r"""Symmetric difference $\triangle Y$ of a family of generalized keys.

    A position character belongs to $\triangle Y$ iff it occurs in an odd
    number of the members.
    """
    return independence.sym_diff(family)


def is_zero_set(family: "KeyFamily", /) -> bool:
    """Whether every position character occurs an even number of times."""
    return independence.is_zero_set(family)


def is_linearly_independent(family: "KeyFamily", /) -> bool:
    r"""Whether no non-empty subfamily is a zero-set.

    This is the full row rank of the incidence matrix over GF(2), with one row
    per key and one column per position character that occurs in the family.
    A repeated key makes the family dependent.

    Parameters
    ----------
    family: sequence of GeneralizedKey
        The keys, for instance from ``to_generalized``.

    Returns
    -------
    independent: bool
        True if the keys are linearly independent.
    """
    return independence.is_linearly_independent(family)


def dependency_witness(family: "KeyFamily", /) -> tuple[int, ...] | None:
    """Indices of members forming a zero-set, or None for an independent family."""
    return independence.dependency_witness(family)


def derived_keys_independent(chars: "np.ndarray", /) -> bool:
    """Independence test for an ``(n, m)`` array of key characters.

    Keys owning a position character that no other key has are peeled off
    repeatedly before the elimination, which makes the test fast on the typical
    sparse instances of derived keys.
    """
    return independence.derived_keys_independent(chars)


def count_zero_ktuples(keys: "KeyFamily", k: int, /) -> int:
    r"""Count the ordered $k$-tuples from $S^k$ that are zero-sets.

    Tuples may repeat keys. The count is exact and limited to $|S|^k \leq 10^8$.
    Compare with ``zero_bound``: at most $3^c n^{k-2}$ such tuples exist.
    """
    return independence.count_zero_ktuples(keys, k)


def count_symdiff_ktuples(keys: "KeyFamily", k: int, target=frozenset(), /) -> int:
    """Count the ordered ``k``-tuples whose symmetric difference equals ``target``."""
    return independence.count_symdiff_ktuples(keys, k, target)


__all__ = [
    "count_symdiff_ktuples",
    "count_zero_ktuples",
    "dependency_witness",
    "derived_keys_independent",
    "is_linearly_independent",
    "is_zero_set",
    "sym_diff",
]
