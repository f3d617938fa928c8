import typing as tp

import numpy as np
from scipy.special import gammaln

if tp.TYPE_CHECKING:
    from numpy.typing import NDArray

    ArrayLike = NDArray | float

from .base import ArrayBackend

Dtype = tp.TypeVar("Dtype")


class NumpyBackend(ArrayBackend):
    """Numpy backend."""

    name = "numpy"

    def asarray(self, obj: "ArrayLike", /, *, dtype: Dtype | None = None) -> "NDArray":
        return np.asarray(obj, dtype=np.float64 if dtype is None else dtype)

    def exp(self, x: "NDArray", /) -> "NDArray":
        return np.exp(x)

    def log(self, x: "NDArray", /) -> "NDArray":
        return np.log(x)

    def log1p(self, x: "NDArray", /) -> "NDArray":
        return np.log1p(x)

    def sqrt(self, x: "NDArray", /) -> "NDArray":
        return np.sqrt(x)

    def lgamma(self, x: "NDArray", /) -> "NDArray":
        return gammaln(x)

    def floor(self, x: "NDArray", /) -> "NDArray":
        return np.floor(x)

    def ceil(self, x: "NDArray", /) -> "NDArray":
        return np.ceil(x)

    def minimum(self, x: "NDArray", y: "NDArray", /) -> "NDArray":
        return np.minimum(x, y)

    def maximum(self, x: "NDArray", y: "NDArray", /) -> "NDArray":
        return np.maximum(x, y)

    def where(
        self, condition: "NDArray", x1: "NDArray", x2: "NDArray", /
    ) -> "NDArray":
        return np.where(condition, x1, x2)

    def isfinite(self, x: "NDArray", /) -> "NDArray":
        return np.isfinite(x)

    def any(self, x: "NDArray", /) -> bool:
        return bool(np.any(x))

    def all(self, x: "NDArray", /) -> bool:
        return bool(np.all(x))

    def to_python(self, x: "NDArray", /) -> tp.Any:
        return np.asarray(x).tolist()


class NumbaBackend(NumpyBackend):
    """Numba backend.

    Bound formulas evaluate exactly as with numpy; hashing and sketching
    operations dispatch to the jit-compiled kernels when this backend is selected.
    """

    name = "numba"
