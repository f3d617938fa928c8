"""GF(2) elimination over position-character incidence vectors."""
import logging
import typing as tp

import numpy as np

from ._family import KeyFamily, PositionChar

logger = logging.getLogger(__name__)


def _eliminate(rows: tp.Sequence[int]) -> tuple[int, ...] | None:
    """Indices of a zero subfamily of the bitset rows, or None if they are independent.

    Each basis vector remembers which input rows it combines, so the first row
    that reduces to zero yields its witness.
    """
    basis: dict[int, tuple[int, int]] = {}
    for i, row in enumerate(rows):
        v, combo = row, 1 << i
        while v:
            pivot = v.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = (v, combo)
                break
            bv, bc = basis[pivot]
            v ^= bv
            combo ^= bc
        else:
            return tuple(j for j in range(i + 1) if combo >> j & 1)
    return None


def _bitsets(family: KeyFamily) -> list[int]:
    columns: dict[PositionChar, int] = {}
    rows = []
    for key in family:
        row = 0
        for pc in key:
            row |= 1 << columns.setdefault(pc, len(columns))
        rows.append(row)
    return rows


def dependency_witness(family: KeyFamily) -> tuple[int, ...] | None:
    """Member indices of a non-empty zero subfamily, or None if the family is independent.

    The witness comes from the elimination and is not guaranteed to be a smallest one.
    """
    seen: dict[frozenset, int] = {}
    for i, key in enumerate(family):
        if key in seen:
            return (seen[key], i)
        seen[key] = i
    return _eliminate(_bitsets(family))


def is_linearly_independent(family: KeyFamily) -> bool:
    return dependency_witness(family) is None


def _column_ids(chars: np.ndarray) -> np.ndarray:
    width = int(chars.max()) + 1 if chars.size else 1
    offsets = np.arange(chars.shape[1], dtype=np.int64) * width
    return chars.astype(np.int64) + offsets


def _peel(ids: np.ndarray) -> np.ndarray:
    """Indices of the rows left after repeatedly removing rows with a private column."""
    alive = np.arange(ids.shape[0])
    while alive.size:
        _, inverse, counts = np.unique(
            ids[alive].ravel(), return_inverse=True, return_counts=True
        )
        private = (counts[inverse] == 1).reshape(alive.size, -1).any(axis=1)
        if not private.any():
            break
        alive = alive[~private]
    return alive


def derived_dependency_witness(chars: "np.ndarray") -> tuple[int, ...] | None:
    """Row indices of a zero subfamily of the character rows, or None.

    Rows owning a position character that no other remaining row has lie in no
    zero set and are peeled off before the elimination.
    """
    chars = np.asarray(chars)
    if chars.ndim != 2:
        raise ValueError("Expected an (n, m) array of characters.")
    if chars.shape[0] == 0:
        return None
    if chars.shape[1] == 0:
        return (0,)
    ids = _column_ids(chars)
    core = _peel(ids)
    logger.debug("Peeled %d of %d keys", ids.shape[0] - core.size, ids.shape[0])
    if core.size == 0:
        return None
    _, compact = np.unique(ids[core].ravel(), return_inverse=True)
    compact = compact.reshape(core.size, -1).tolist()
    rows = [sum(1 << c for c in set(row)) for row in compact]
    witness = _eliminate(rows)
    if witness is None:
        return None
    return tuple(sorted(int(core[j]) for j in witness))


def derived_keys_independent(chars: "np.ndarray") -> bool:
    return derived_dependency_witness(chars) is None
