import typing as tp

if tp.TYPE_CHECKING:
    from decimal import Decimal

    from numpy.typing import NDArray

    _array = NDArray | Decimal
    Array = tp.TypeVar("Array", bound=_array)
    ArrayLike = tp.TypeVar("ArrayLike", bound=_array | float | int)
    KeysLike = NDArray | tp.Sequence[int] | int
    # packed uint64 key, character i in bits [i*char_bits, (i+1)*char_bits)
    Key = NDArray
    # (..., c+d) uint64 characters
    DerivedKey = NDArray

    Backend = tp.Literal["numpy", "numba", "decimal"] | None
