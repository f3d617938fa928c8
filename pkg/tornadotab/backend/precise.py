import decimal
import math
import typing as tp
from fractions import Fraction

import numpy as np

from .base import ArrayBackend

PRECISION = 60


class DecimalBackend(ArrayBackend):
    """Arbitrary precision backend on top of the standard library ``decimal`` module.

    Only scalars are supported. Formulas evaluated inside ``precision()`` carry
    at least ``PRECISION`` significant digits.
    """

    name = "decimal"
    supports_arrays = False

    def __init__(self, prec: int = PRECISION):
        self.prec = prec
        self._context = decimal.Context(prec=prec, Emin=-999999, Emax=999999)

    def precision(self) -> tp.ContextManager:
        return decimal.localcontext(self._context)

    @property
    def e(self) -> decimal.Decimal:
        return self.exp(1)

    @property
    def inf(self) -> decimal.Decimal:
        return decimal.Decimal("Infinity")

    @property
    def nan(self) -> decimal.Decimal:
        return decimal.Decimal("NaN")

    @property
    def pi(self) -> decimal.Decimal:
        return decimal.Decimal(repr(math.pi))

    def asarray(self, obj, /, *, dtype=None) -> decimal.Decimal:
        if isinstance(obj, decimal.Decimal):
            return obj
        if isinstance(obj, np.generic):
            obj = obj.item()
        if isinstance(obj, bool):
            return decimal.Decimal(int(obj))
        if isinstance(obj, int):
            return decimal.Decimal(obj)
        if isinstance(obj, float):
            return decimal.Decimal(repr(obj))
        if isinstance(obj, Fraction):
            with self.precision():
                return decimal.Decimal(obj.numerator) / decimal.Decimal(obj.denominator)
        if isinstance(obj, str):
            return decimal.Decimal(obj)
        raise TypeError(
            f"The decimal backend works on scalars only, got {type(obj).__name__}."
        )

    def exp(self, x, /) -> decimal.Decimal:
        return self.asarray(x).exp(self._context)

    def log(self, x, /) -> decimal.Decimal:
        return self.asarray(x).ln(self._context)

    def log1p(self, x, /) -> decimal.Decimal:
        x = self.asarray(x)
        if abs(x) < decimal.Decimal("1e-30"):
            return x - x * x / 2 + x * x * x / 3
        ctx = self._context.copy()
        ctx.prec += 20
        return ctx.ln(ctx.add(1, x))

    def sqrt(self, x, /) -> decimal.Decimal:
        return self.asarray(x).sqrt(self._context)

    def lgamma(self, x, /) -> decimal.Decimal:
        x = self.asarray(x)
        if x != x.to_integral_value() or x < 1:
            raise ValueError("The decimal backend evaluates lgamma at positive integers only.")
        return decimal.Decimal(math.factorial(int(x) - 1)).ln(self._context)

    def floor(self, x, /) -> decimal.Decimal:
        return self.asarray(x).to_integral_value(rounding=decimal.ROUND_FLOOR)

    def ceil(self, x, /) -> decimal.Decimal:
        return self.asarray(x).to_integral_value(rounding=decimal.ROUND_CEILING)

    def minimum(self, x, y, /) -> decimal.Decimal:
        return min(self.asarray(x), self.asarray(y))

    def maximum(self, x, y, /) -> decimal.Decimal:
        return max(self.asarray(x), self.asarray(y))

    def where(self, condition, x1, x2, /):
        return x1 if condition else x2

    def isfinite(self, x, /) -> bool:
        return self.asarray(x).is_finite()

    def any(self, x, /) -> bool:
        return bool(x)

    def all(self, x, /) -> bool:
        return bool(x)

    def to_python(self, x, /) -> tp.Any:
        if isinstance(x, decimal.Decimal):
            return float(x)
        return x
