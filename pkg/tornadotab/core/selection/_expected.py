import typing as tp

from tornadotab.core.bounds import mu_bar

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend


def expected_layer_profile(
    mu: float, sigma_size: int, layers: int, *, backend: "Backend" = None
) -> list[float]:
    """Reference curve ``mu_bar_i`` for ``i = 1..layers`` at fill ``f = mu / |Sigma|``."""
    f = float(mu) / sigma_size
    return [float(mu_bar(i, f, sigma_size, backend=backend).value) for i in range(1, layers + 1)]
