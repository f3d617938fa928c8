from ._coupling import CouplingSizes, coupling_sizes
from ._independence import independence_failure_bound
from ._inputs import FORMULAS, BoundInputs, evaluate
from ._lambert import lambert_w, lambert_w_upper
from ._result import BoundResult
from ._symbols import (
    S_ALL,
    S_ALL_PROSE,
    S_SEC,
    SymbolTable,
    UglyBound,
    no_big_layers_bound,
    p_error,
    symbol_table,
    ugly_bound,
)
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

__all__ = [
    "FORMULAS",
    "S_ALL",
    "S_ALL_PROSE",
    "S_SEC",
    "BoundInputs",
    "BoundResult",
    "CouplingSizes",
    "SymbolTable",
    "UglyBound",
    "bernstein_tail",
    "classic_chernoff",
    "coupling_sizes",
    "evaluate",
    "generalized_chernoff",
    "independence_failure_bound",
    "lambert_w",
    "lambert_w_upper",
    "layer_upper_tail",
    "local_uniformity_error",
    "mu_bar",
    "no_big_layers_bound",
    "p_error",
    "pretty1_bound",
    "subsampling_bound",
    "symbol_table",
    "ugly_bound",
    "upper_tail_local",
    "upper_tail_tornado",
]
