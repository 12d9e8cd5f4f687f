"""Two-qubit entanglement measures and the EOF-to-REE closest-separable-state procedure."""
from .errors import InfeasibleMixingError, SeparableStateError, ValidationError
from .measures import (
    MeasureReport,
    Method,
    PureState,
    binary_entropy,
    concurrence_mixed,
    concurrence_pure,
    eof,
    eof_from_concurrence,
    relative_entropy,
    von_neumann_entropy,
)
from .oracle import OracleConfig, OracleResult, ree_numeric
from .procedure import (
    BoundaryVerdict,
    ProcedureTrace,
    classify_boundary,
    mix_member_css,
    ree_from_eof,
    solve_boundary_mixing,
)
from .qcore import DensityMatrix, jacobi_eigh, min_pt_eigenvalue, partial_transpose, takagi
from .schmidt import SchmidtData, css_pure, ree_pure, schmidt_decompose
from .wootters import Ensemble, ValidationReport, optimal_decomposition, validate_optimal

__all__ = [
    "BoundaryVerdict",
    "DensityMatrix",
    "Ensemble",
    "InfeasibleMixingError",
    "MeasureReport",
    "Method",
    "OracleConfig",
    "OracleResult",
    "ProcedureTrace",
    "PureState",
    "SchmidtData",
    "SeparableStateError",
    "ValidationError",
    "ValidationReport",
    "binary_entropy",
    "classify_boundary",
    "concurrence_mixed",
    "concurrence_pure",
    "css_pure",
    "eof",
    "eof_from_concurrence",
    "jacobi_eigh",
    "min_pt_eigenvalue",
    "mix_member_css",
    "optimal_decomposition",
    "partial_transpose",
    "ree_from_eof",
    "ree_numeric",
    "ree_pure",
    "relative_entropy",
    "schmidt_decompose",
    "solve_boundary_mixing",
    "takagi",
    "validate_optimal",
    "von_neumann_entropy",
]
