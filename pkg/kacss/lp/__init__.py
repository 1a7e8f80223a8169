from .acss import FractionalSolution, degree_lower_bound_holds, fractional_support, solve_lp_acss, sparsity_holds
from .cutting_plane import CuttingPlaneDriver, LpTranscript, SeparationOracle
from .simplex import (
    LinearProgram,
    Relation,
    Row,
    Sense,
    SolveStatus,
    VertexSolution,
    is_vertex,
    solve,
    tight_constraint_rank,
    verify_optimality,
)

__all__ = [
    "CuttingPlaneDriver",
    "FractionalSolution",
    "LinearProgram",
    "LpTranscript",
    "Relation",
    "Row",
    "SeparationOracle",
    "Sense",
    "SolveStatus",
    "VertexSolution",
    "degree_lower_bound_holds",
    "fractional_support",
    "is_vertex",
    "solve",
    "solve_lp_acss",
    "sparsity_holds",
    "tight_constraint_rank",
    "verify_optimality",
]
