"""Recovering pairs of set systems: predicates, constructions, statistics,
extremal search and the entropy-bound certificate."""

from .constructions import (
    aharoni_counterexample,
    canonical_pair,
    hexad_pair,
    power,
    product,
    swap_and_multiply,
)
from .setcore import (
    RecoveringPair,
    SetSystem,
    Status,
    is_cancellative,
    is_half_recovering,
    is_recovering,
    pair_size,
    uniformity,
)
from .stats import aharoni_sum, compute_statistics, count_full_union_solutions

__version__ = "0.1.0"

__all__ = [
    "RecoveringPair",
    "SetSystem",
    "Status",
    "aharoni_counterexample",
    "aharoni_sum",
    "canonical_pair",
    "compute_statistics",
    "count_full_union_solutions",
    "hexad_pair",
    "is_cancellative",
    "is_half_recovering",
    "is_recovering",
    "pair_size",
    "power",
    "product",
    "swap_and_multiply",
    "uniformity",
]
