import math
from collections import Counter

from tornadotab.core.errors import ParameterError, SizeError

from ._family import GeneralizedKey, KeyFamily, PositionChar

ENUMERATION_GUARD = 10**8


def _half_counts(masks: list[int], length: int) -> Counter:
    counts: Counter = Counter({0: 1})
    for _ in range(length):
        nxt: Counter = Counter()
        for acc, mult in counts.items():
            for m in masks:
                nxt[acc ^ m] += mult
        counts = nxt
    return counts


def count_symdiff_ktuples(
    keys: KeyFamily, k: int, target: GeneralizedKey = frozenset()
) -> int:
    """Number of ordered ``k``-tuples of keys whose symmetric difference is ``target``.

    Repeats are allowed. Half tuples are XOR-counted and then matched.
    """
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}.")
    n = len(keys)
    if n**k > ENUMERATION_GUARD:
        raise SizeError(f"{n}**{k} tuples exceed the enumeration guard {ENUMERATION_GUARD}.")
    columns: dict[PositionChar, int] = {}

    def mask(key: GeneralizedKey) -> int:
        return sum(1 << columns.setdefault(pc, len(columns)) for pc in key)

    masks = [mask(key) for key in keys]
    goal = mask(target)
    left = _half_counts(masks, k // 2)
    right = left if k % 2 == 0 else _half_counts(masks, k - k // 2)
    return sum(mult * right.get(acc ^ goal, 0) for acc, mult in left.items())


def count_zero_ktuples(keys: KeyFamily, k: int) -> int:
    if k < 4 or k % 2:
        raise ParameterError(f"k must be even and at least 4, got {k}.")
    return count_symdiff_ktuples(keys, k)


def zero_bound(n: int, c: int, k: int) -> int:
    """``3**c * n**(k-2)``, the bound on zero-set ``k``-tuples from ``n`` keys."""
    return 3**c * n ** (k - 2)


def tuple_bound(n: int, c: int, t: int) -> int:
    """``((2t-1)!!)**c * n**t``, the bound on ``2t``-tuples with a given symmetric difference."""
    return math.prod(range(1, 2 * t, 2)) ** c * n**t
