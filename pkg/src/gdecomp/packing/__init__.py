"""Packing engines: copy enumeration, greedy/fractional/exact packing,
perfect factors, and cross-edge covers."""

from .copies import (
    Decomposition,
    automorphisms,
    copy_support,
    enumerate_copies,
    graph_of_copies,
    has_copy,
)
from .cover import CrossCover, cover_cross, cover_partition_cross
from .engines import (
    LP_TOLERANCE,
    FractionalPacking,
    Packing,
    exact_decompose,
    fractional_packing,
    greedy_packing,
    switching_packing,
)
from .factors import (
    FactorReport,
    default_factor_count,
    edge_disjoint_factors,
    perfect_factor,
)

__all__ = [
    "Decomposition",
    "automorphisms",
    "copy_support",
    "enumerate_copies",
    "graph_of_copies",
    "has_copy",
    "CrossCover",
    "cover_cross",
    "cover_partition_cross",
    "LP_TOLERANCE",
    "FractionalPacking",
    "Packing",
    "exact_decompose",
    "fractional_packing",
    "greedy_packing",
    "switching_packing",
    "FactorReport",
    "default_factor_count",
    "edge_disjoint_factors",
    "perfect_factor",
]
