from .instance import Arc, ArcSet, Instance, parse_arc_set, parse_instance, write_arc_set, write_instance
from .generator import random_k_connected

__all__ = [
    "Arc",
    "ArcSet",
    "Instance",
    "parse_arc_set",
    "parse_instance",
    "random_k_connected",
    "write_arc_set",
    "write_instance",
]
