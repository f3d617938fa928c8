import math
from dataclasses import dataclass

from tornadotab.core.errors import DomainError

from ._tails import local_uniformity_error


@dataclass(frozen=True)
class CouplingSizes:
    """Sizes of the fully random key sets coupled with a tornado run on ``n`` keys.

    With probability at least ``1 - upper_failure`` the selection from ``upper``
    random keys is at least as large as the tornado selection; with probability
    at least ``1 - lower_failure`` the one from ``lower`` keys is at most as large.
    """

    n: int
    upper: int
    lower: int
    upper_failure: float
    lower_failure: float


def coupling_sizes(n: int, sigma_size: int, p: float, b: int = 1) -> CouplingSizes:
    """``ceil(n (1 + 8 sqrt(ln(1/P)/s)))`` and ``floor(n (1 - 9 sqrt(ln(1/P)/s)))``."""
    if not 0 < p < 1:
        raise DomainError(f"The coupling needs P in (0, 1), got {p}.")
    r = math.sqrt(math.log(1 / p) / sigma_size)
    local = float(local_uniformity_error(sigma_size, b, backend="numpy").raw)
    return CouplingSizes(
        n=n,
        upper=math.ceil(n * (1 + 8 * r)),
        lower=max(0, math.floor(n * (1 - 9 * r))),
        upper_failure=2 * p + local,
        lower_failure=3 * p + local,
    )
