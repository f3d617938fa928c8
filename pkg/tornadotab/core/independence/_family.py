import functools
import operator
import typing as tp
from dataclasses import dataclass

import numpy as np

from tornadotab.core.errors import InputError

if tp.TYPE_CHECKING:
    from tornadotab.core.hashing import HashParams


@dataclass(frozen=True, order=True)
class PositionChar:
    """Character ``character`` at the 1-based ``position`` of a key."""

    position: int
    character: int

    def __post_init__(self):
        if self.position < 1:
            raise InputError(f"Positions start at 1, got {self.position}.")
        if self.character < 0:
            raise InputError(f"Characters are non-negative, got {self.character}.")


GeneralizedKey = frozenset[PositionChar]
KeyFamily = tp.Sequence[GeneralizedKey]


def to_generalized(key, params: "HashParams | None" = None) -> GeneralizedKey:
    """Position characters of a key.

    ``key`` is a sequence of characters (a key or a derived key), or a packed key
    when ``params`` is given.
    """
    if params is not None:
        from tornadotab.core.hashing import unpack_keys

        key = unpack_keys(int(key), params)
    chars = np.asarray(key).tolist()
    return frozenset(PositionChar(i, int(ch)) for i, ch in enumerate(chars, start=1))


def sym_diff(family: KeyFamily) -> GeneralizedKey:
    """Position characters that occur an odd number of times in the family."""
    return functools.reduce(operator.xor, family, frozenset())


def is_zero_set(family: KeyFamily) -> bool:
    return not sym_diff(family)
