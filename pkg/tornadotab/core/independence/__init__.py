from ._family import (
    GeneralizedKey,
    KeyFamily,
    PositionChar,
    is_zero_set,
    sym_diff,
    to_generalized,
)
from ._rank import (
    dependency_witness,
    derived_dependency_witness,
    derived_keys_independent,
    is_linearly_independent,
)
from ._tuples import (
    ENUMERATION_GUARD,
    count_symdiff_ktuples,
    count_zero_ktuples,
    tuple_bound,
    zero_bound,
)

__all__ = [
    "ENUMERATION_GUARD",
    "GeneralizedKey",
    "KeyFamily",
    "PositionChar",
    "count_symdiff_ktuples",
    "count_zero_ktuples",
    "dependency_witness",
    "derived_dependency_witness",
    "derived_keys_independent",
    "is_linearly_independent",
    "is_zero_set",
    "sym_diff",
    "to_generalized",
    "tuple_bound",
    "zero_bound",
]
