import typing as tp

from tornadotab.backend import backends
from tornadotab.core.errors import DomainError

from ._result import BoundResult, flag, real

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Array, ArrayLike, Backend

MAX_ITERATIONS = 200
SINGULAR = 1e-8


def lambert_w(x: "ArrayLike", backend: "Backend" = None) -> "Array":
    """Principal branch of the Lambert W function by Newton iteration.

    The start lies above the root for ``x <= e``, where the iterates then decrease
    monotonically. Used as the reference for ``lambert_w_upper``.
    """
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        x = B.asarray(x)
        if B.any(x <= -1 / B.e):
            raise DomainError("The principal branch is evaluated for x > -1/e only.")
        big = B.maximum(x, B.e)
        w = B.where(x > B.e, B.log(big) - B.log(B.log(big)), B.log1p(B.maximum(x, -1 / B.e)))
        tol = B.asarray(10) ** -(getattr(B, "prec", 16) - 2)
        for _ in range(MAX_ITERATIONS):
            ew = B.exp(w)
            g = w * ew - x
            step = g / (ew * (w + 1))
            w = w - step
            if B.all(abs(step) <= tol * (1 + abs(w))):
                break
        return w


def lambert_w_upper(x: "ArrayLike", backend: "Backend" = None) -> BoundResult:
    """Upper bound ``ln(2x / (ln(x) + 1))`` on ``W(x)`` for ``x > 1/e``."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        x = B.asarray(x)
        if B.any(x <= 1 / B.e):
            raise DomainError("The Lambert W bound holds for x > 1/e only.")
        denom = B.log(x) + 1
        warnings: list[str] = []
        flag(
            "lambert_w_upper",
            warnings,
            B.any(denom < B.asarray(SINGULAR)),
            "x is close to 1/e where the bound is singular",
        )
        return real(B, B.log(2 * x / denom), warnings)
