import logging
from importlib.metadata import version

from tornadotab._bounds import (
    classic_chernoff,
    independence_failure_bound,
    pretty1_bound,
    subsampling_bound,
    symbol_table,
    ugly_bound,
    upper_tail_tornado,
)
from tornadotab._hashing import (
    hash_keys,
    oracle_hash,
    oracle_new,
    simple_tab_hash,
    simple_tab_new,
    tornado_derive,
    tornado_hash,
    tornado_hash_combined,
    tornado_new,
    tornado_split,
)
from tornadotab._independence import (
    count_symdiff_ktuples,
    count_zero_ktuples,
    dependency_witness,
    derived_keys_independent,
    is_linearly_independent,
    is_zero_set,
    sym_diff,
)
from tornadotab._selection import (
    buckets_by_last_char,
    conditional_expectation_estimate,
    conditional_expectation_exact,
    layer_profile,
    make_hbar_fixture,
    select,
    write_layer_csv,
)
from tornadotab._sketches import (
    bottomk_build,
    bottomk_distinct_estimate,
    frequency_estimate,
    jaccard_estimate,
    kpm_build,
    kpm_estimate,
    signed_projection,
    threshold_sample,
    vectork_build,
)
from tornadotab.backend import backends, register_backend
from tornadotab.core.bounds import (
    BoundInputs,
    BoundResult,
    bernstein_tail,
    coupling_sizes,
    generalized_chernoff,
    lambert_w,
    lambert_w_upper,
    layer_upper_tail,
    local_uniformity_error,
    mu_bar,
    no_big_layers_bound,
    p_error,
    upper_tail_local,
)
from tornadotab.core.errors import (
    ConfigError,
    DomainError,
    InputError,
    ParameterError,
    ResourceError,
    SizeError,
    TornadoError,
    UnsupportedError,
)
from tornadotab.core.hashing import (
    HashParams,
    RandomOracle,
    SimpleTabulation,
    TornadoHasher,
    pack_keys,
    read_golden,
    unpack_keys,
    write_golden,
)
from tornadotab.core.independence import PositionChar, to_generalized, tuple_bound, zero_bound
from tornadotab.core.selection import Selector
from tornadotab.core.sketches import (
    bottomk_insert,
    bottomk_subset_estimate,
    bottomk_union,
    dumps,
    kpm_insert,
    kpm_union,
    loads,
    threshold_intersection_estimate,
    to_json,
    vectork_insert,
    vectork_union,
)

__version__ = version("tornadotab")

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "register_backend",
    "backends",
    "HashParams",
    "TornadoHasher",
    "SimpleTabulation",
    "RandomOracle",
    "tornado_new",
    "tornado_hash",
    "tornado_derive",
    "tornado_split",
    "tornado_hash_combined",
    "simple_tab_new",
    "simple_tab_hash",
    "oracle_new",
    "oracle_hash",
    "hash_keys",
    "pack_keys",
    "unpack_keys",
    "read_golden",
    "write_golden",
    "Selector",
    "select",
    "buckets_by_last_char",
    "layer_profile",
    "make_hbar_fixture",
    "conditional_expectation_estimate",
    "conditional_expectation_exact",
    "write_layer_csv",
    "PositionChar",
    "to_generalized",
    "sym_diff",
    "is_zero_set",
    "is_linearly_independent",
    "dependency_witness",
    "derived_keys_independent",
    "count_zero_ktuples",
    "count_symdiff_ktuples",
    "zero_bound",
    "tuple_bound",
    "BoundInputs",
    "BoundResult",
    "classic_chernoff",
    "upper_tail_tornado",
    "generalized_chernoff",
    "upper_tail_local",
    "local_uniformity_error",
    "pretty1_bound",
    "subsampling_bound",
    "bernstein_tail",
    "mu_bar",
    "layer_upper_tail",
    "lambert_w",
    "lambert_w_upper",
    "symbol_table",
    "ugly_bound",
    "p_error",
    "no_big_layers_bound",
    "independence_failure_bound",
    "coupling_sizes",
    "threshold_sample",
    "threshold_intersection_estimate",
    "frequency_estimate",
    "bottomk_build",
    "bottomk_insert",
    "bottomk_union",
    "bottomk_distinct_estimate",
    "bottomk_subset_estimate",
    "kpm_build",
    "kpm_insert",
    "kpm_union",
    "kpm_estimate",
    "vectork_build",
    "vectork_insert",
    "vectork_union",
    "jaccard_estimate",
    "signed_projection",
    "dumps",
    "loads",
    "to_json",
    "TornadoError",
    "ParameterError",
    "InputError",
    "DomainError",
    "SizeError",
    "UnsupportedError",
    "ConfigError",
    "ResourceError",
]
