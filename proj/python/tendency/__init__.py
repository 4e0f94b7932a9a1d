"""Cluster-tendency assessment and co-clustering over dense matrices.

VAT/iVAT reordering, MMRS sampling, sco-iVAT co-clustering, geohash
utilities, synthetic generators, and matrix-image rendering, backed by the
C++ core.
"""

from tendency._core import (
    CoClusterBlock,
    CoClusterResult,
    DataError,
    adjusted_rand_index,
    cut_clusters,
    default_cocluster_tau,
    extend_labels,
    extract_coclusters,
    gen_example1,
    gen_example2,
    gen_gaussian2d,
    geohash_decode,
    geohash_encode,
    ivat_transform,
    maximin_select,
    minimax_oracle,
    mmrs_sample,
    pairwise_dissimilarity,
    render_grayscale,
    render_performance,
    sco_ivat,
    spearman,
    suggest_k,
    vat_reorder,
)

__all__ = [
    "CoClusterBlock",
    "CoClusterResult",
    "DataError",
    "adjusted_rand_index",
    "cut_clusters",
    "default_cocluster_tau",
    "extend_labels",
    "extract_coclusters",
    "gen_example1",
    "gen_example2",
    "gen_gaussian2d",
    "geohash_decode",
    "geohash_encode",
    "ivat_transform",
    "maximin_select",
    "minimax_oracle",
    "mmrs_sample",
    "pairwise_dissimilarity",
    "render_grayscale",
    "render_performance",
    "sco_ivat",
    "spearman",
    "suggest_k",
    "vat_reorder",
]
