import typing as tp

from tornadotab.backend import backends
from tornadotab.core.errors import ParameterError

from ._result import BoundResult, flag, probability
from ._tails import _pow2_half, _ratio_pow

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import ArrayLike, Backend

VARIANTS = ("old", "new")


def independence_failure_bound(
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    d: "ArrayLike",
    variant: str = "old",
    *,
    n: "ArrayLike | None" = None,
    c: "ArrayLike | None" = None,
    backend: "Backend" = None,
) -> BoundResult:
    """Probability that the derived selected keys are linearly dependent.

    ``variant="old"``: ``7 mu^3 (3/s)^(d+1) + 2^(-s/2)``.
    ``variant="new"``: ``3^c s/n * 3 mu^3 (3/s)^(d+1) + f^(s/2)`` with ``f = mu/s``;
    it needs ``n`` and ``c``.
    """
    if variant not in VARIANTS:
        raise ParameterError(f"variant must be one of {VARIANTS}, got {variant!r}.")
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        mu, s, d = map(B.asarray, (mu, sigma_size, d))
        warnings: list[str] = []
        flag("independence", warnings, B.any(mu > s / 2), "mu <= |Sigma|/2 does not hold")
        tail = _ratio_pow(B, s, d + 1)
        if variant == "old":
            return probability(B, 7 * mu**3 * tail, _pow2_half(B, s), warnings)
        if n is None or c is None:
            raise ParameterError("The new variant needs the key count n and c.")
        n, c = B.asarray(n), B.asarray(c)
        main = B.exp(c * B.log(B.asarray(3))) * s / n * 3 * mu**3 * tail
        f = mu / s
        safe = B.where(f > 0, f, B.asarray(1))
        rest = B.where(f > 0, B.exp(s / 2 * B.log(safe)), B.asarray(0))
        return probability(B, main, rest, warnings)
