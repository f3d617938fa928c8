import typing as tp
from dataclasses import dataclass, fields

from tornadotab.core.errors import ParameterError

from ._independence import independence_failure_bound
from ._lambert import lambert_w_upper
from ._result import BoundResult
from ._symbols import no_big_layers_bound, p_error
from ._tails import (
    bernstein_tail,
    classic_chernoff,
    generalized_chernoff,
    layer_upper_tail,
    local_uniformity_error,
    mu_bar,
    pretty1_bound,
    subsampling_bound,
    upper_tail_local,
    upper_tail_tornado,
)

if tp.TYPE_CHECKING:
    from tornadotab.core.typing import Backend


@dataclass(frozen=True)
class BoundInputs:
    """Named inputs of the bound formulas; each formula reads the fields it needs."""

    delta: float | None = None
    mu: float | None = None
    sigma_size: int | None = None
    b: int = 1
    c: int | None = None
    d: int | None = None
    p: float | None = None
    sel_bits: int = 0
    i: int | None = None
    f: float | None = None
    t: float | None = None
    variance_sum: float | None = None
    m: float | None = None
    x: float | None = None
    n: int | None = None
    variant: str = "old"

    def need(self, *names: str) -> list:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise ParameterError(f"Missing bound inputs: {', '.join(missing)}.")
        return [getattr(self, name) for name in names]

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def _independence(a: BoundInputs, backend):
    return independence_failure_bound(
        *a.need("mu", "sigma_size", "d"),
        a.variant,
        n=a.n,
        c=a.c,
        backend=backend,
    )


FORMULAS: dict[str, tp.Callable[[BoundInputs, "Backend"], BoundResult]] = {
    "classic_chernoff": lambda a, B: classic_chernoff(*a.need("delta", "mu"), backend=B),
    "upper_tail": lambda a, B: upper_tail_tornado(*a.need("delta", "mu"), backend=B),
    "generalized_chernoff": lambda a, B: generalized_chernoff(
        *a.need("delta", "mu"), backend=B
    ),
    "bernstein": lambda a, B: bernstein_tail(
        *a.need("t", "variance_sum", "m"), backend=B
    ),
    "local_uniformity": lambda a, B: local_uniformity_error(
        *a.need("sigma_size", "b"), backend=B
    ),
    "upper_tail_local": lambda a, B: upper_tail_local(
        *a.need("delta", "mu", "sigma_size", "b"), backend=B
    ),
    "pretty1": lambda a, B: pretty1_bound(
        *a.need("delta", "mu", "sigma_size", "b", "c"), backend=B
    ),
    "subsampling": lambda a, B: subsampling_bound(
        *a.need("delta", "mu", "sigma_size", "b", "c"), backend=B
    ),
    "mu_bar": lambda a, B: mu_bar(*a.need("i", "f", "sigma_size"), backend=B),
    "layer_upper_tail": lambda a, B: layer_upper_tail(
        *a.need("i", "delta", "f", "sigma_size"), backend=B
    ),
    "lambert_w_upper": lambda a, B: lambert_w_upper(*a.need("x"), backend=B),
    "p_error": lambda a, B: p_error(*a.need("c", "d", "sigma_size"), backend=B),
    "no_big_layers": lambda a, B: no_big_layers_bound(
        *a.need("c", "d", "sigma_size"), backend=B
    ),
    "independence": _independence,
}


def evaluate(name: str, inputs: BoundInputs, *, backend: "Backend" = None) -> BoundResult:
    """Evaluate the formula registered under ``name``."""
    try:
        formula = FORMULAS[name]
    except KeyError as err:
        raise ParameterError(
            f"Unknown formula {name!r}; choose from {sorted(FORMULAS)}."
        ) from err
    return formula(inputs, backend)
