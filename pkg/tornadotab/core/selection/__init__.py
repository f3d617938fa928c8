from ._conditional import (
    HbarFixture,
    LayerExpectation,
    conditional_expectation_estimate,
    conditional_expectation_exact,
    make_hbar_fixture,
    resampled_last_table,
)
from ._expected import expected_layer_profile
from ._layers import LayerProfile, layer_profile, profile_from_sizes, write_layer_csv
from ._select import (
    BucketDecomposition,
    SelectionResult,
    Selector,
    buckets_by_last_char,
    select,
)

__all__ = [
    "BucketDecomposition",
    "HbarFixture",
    "LayerExpectation",
    "LayerProfile",
    "SelectionResult",
    "Selector",
    "buckets_by_last_char",
    "conditional_expectation_estimate",
    "conditional_expectation_exact",
    "expected_layer_profile",
    "layer_profile",
    "make_hbar_fixture",
    "profile_from_sizes",
    "resampled_last_table",
    "select",
    "write_layer_csv",
]
