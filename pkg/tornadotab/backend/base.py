import abc
import contextlib
import typing as tp

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Array, ArrayLike


Dtype = tp.TypeVar("Dtype")


class ArrayBackend(abc.ABC):
    """The abstract class for the numerical backends the bound formulas run on."""

    name: str
    e: float = 2.718281828459045
    inf = float("inf")
    nan = float("nan")
    pi: float = 3.141592653589793
    supports_arrays: bool = True

    def precision(self) -> tp.ContextManager:
        """Context in which formulas are evaluated."""
        return contextlib.nullcontext()

    @abc.abstractmethod
    def asarray(
        self,
        obj: "ArrayLike",
        /,
        *,
        dtype: Dtype | None = None,
    ) -> "Array":
        """Convert the input to an array."""

    @abc.abstractmethod
    def exp(self, x: "Array", /) -> "Array":
        """Calculate the exponential of each element ``x_i`` of the input array ``x``."""

    @abc.abstractmethod
    def log(self, x: "Array", /) -> "Array":
        """Calculate the natural logarithm for each element ``x_i`` of the input array ``x``."""

    @abc.abstractmethod
    def log1p(self, x: "Array", /) -> "Array":
        """Calculate ``log(1 + x_i)`` accurately for small ``x_i``."""

    @abc.abstractmethod
    def sqrt(self, x: "Array", /) -> "Array":
        """Calculate the square root for each element ``x_i`` of the input array ``x``."""

    @abc.abstractmethod
    def lgamma(self, x: "Array", /) -> "Array":
        """Calculate the natural logarithm of the gamma function of ``x``."""

    @abc.abstractmethod
    def floor(self, x: "Array", /) -> "Array":
        """Round each element ``x_i`` down to the nearest integer."""

    @abc.abstractmethod
    def ceil(self, x: "Array", /) -> "Array":
        """Round each element ``x_i`` up to the nearest integer."""

    @abc.abstractmethod
    def minimum(self, x: "Array", y: "ArrayLike", /) -> "Array":
        """Compute the element-wise minimum of ``x`` and ``y``."""

    @abc.abstractmethod
    def maximum(self, x: "Array", y: "ArrayLike", /) -> "Array":
        """Compute the element-wise maximum of ``x`` and ``y``."""

    @abc.abstractmethod
    def where(self, condition: "Array", x1: "Array", x2: "Array", /) -> "Array":
        """Return elements chosen from ``x1`` or ``x2`` depending on ``condition``."""

    @abc.abstractmethod
    def isfinite(self, x: "Array", /) -> "Array":
        """Test each element ``x_i`` of the input array ``x`` for finiteness."""

    @abc.abstractmethod
    def any(self, x: "Array", /) -> bool:
        """Test whether any input element evaluates to ``True``."""

    @abc.abstractmethod
    def all(self, x: "Array", /) -> bool:
        """Test whether all input elements evaluate to ``True``."""

    @abc.abstractmethod
    def to_python(self, x: "Array", /) -> tp.Any:
        """Convert a result to plain python objects (floats or nested lists)."""
