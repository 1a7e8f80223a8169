from .arborescence import (
    ArborescenceSet,
    Direction,
    counting_lower_bound,
    is_k_arborescence,
    min_weight_k_arborescence,
    prune_to_minimal,
    union_is_k_arc_connected,
    weight_of,
)
from .decomposition import CombinationTerm, ConvexCombination, decompose

__all__ = [
    "ArborescenceSet",
    "CombinationTerm",
    "ConvexCombination",
    "Direction",
    "counting_lower_bound",
    "decompose",
    "is_k_arborescence",
    "min_weight_k_arborescence",
    "prune_to_minimal",
    "union_is_k_arc_connected",
    "weight_of",
]
