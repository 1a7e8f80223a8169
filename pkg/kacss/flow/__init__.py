from .dinic import (
    CapacityVector,
    CutCertificate,
    FlowResult,
    flow_at_least,
    is_k_arc_connected,
    max_flow,
    min_violated_cut,
)

__all__ = [
    "CapacityVector",
    "CutCertificate",
    "FlowResult",
    "flow_at_least",
    "is_k_arc_connected",
    "max_flow",
    "min_violated_cut",
]
