from ._bottomk import (
    BottomKSketch,
    bottomk_build,
    bottomk_distinct_estimate,
    bottomk_insert,
    bottomk_new,
    bottomk_subset_estimate,
    bottomk_union,
)
from ._kpm import (
    KPartitionMinSketch,
    kpm_build,
    kpm_estimate,
    kpm_insert,
    kpm_new,
    kpm_union,
)
from ._serialize import Sketch, dumps, loads, to_dict, to_json
from ._threshold import (
    Predicate,
    frequency_estimate,
    threshold_intersection_estimate,
    threshold_sample,
)
from ._vectork import (
    VectorKSample,
    bucket_index,
    fill_count,
    jaccard_estimate,
    signed_projection,
    vectork_build,
    vectork_insert,
    vectork_union,
)

__all__ = [
    "BottomKSketch",
    "KPartitionMinSketch",
    "Predicate",
    "Sketch",
    "VectorKSample",
    "bottomk_build",
    "bottomk_distinct_estimate",
    "bottomk_insert",
    "bottomk_new",
    "bottomk_subset_estimate",
    "bottomk_union",
    "bucket_index",
    "dumps",
    "fill_count",
    "frequency_estimate",
    "jaccard_estimate",
    "kpm_build",
    "kpm_estimate",
    "kpm_insert",
    "kpm_new",
    "kpm_union",
    "loads",
    "signed_projection",
    "threshold_intersection_estimate",
    "threshold_sample",
    "to_dict",
    "to_json",
    "vectork_build",
    "vectork_insert",
    "vectork_union",
]
