"""Branch-and-bound search over recovering pairs on small ground sets."""

from .engine import (
    Certificate,
    ConjectureRow,
    SearchBudget,
    SearchResult,
    objective_value,
    search,
    search_max_aharoni,
    search_max_f,
    search_max_size,
    seed_pairs,
    verify_conjecture_range,
)
from .kernels import BACKEND
from .tables import AHARONI, F_COUNT, OBJECTIVES, SIZE

__all__ = [
    "AHARONI",
    "BACKEND",
    "Certificate",
    "ConjectureRow",
    "F_COUNT",
    "OBJECTIVES",
    "SIZE",
    "SearchBudget",
    "SearchResult",
    "objective_value",
    "search",
    "search_max_aharoni",
    "search_max_f",
    "search_max_size",
    "seed_pairs",
    "verify_conjecture_range",
]
