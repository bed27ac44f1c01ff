"""Exact cyclotomic arithmetic and linear algebra."""
from .cyclotomic import (
    ConductorMismatch,
    Cyclotomic,
    cyc,
    cyclotomic_polynomial,
    format_cyclotomic,
    parse_cyclotomic,
    totient,
)
from .linalg import (
    SingularMatrixError,
    Solution,
    identity,
    inverse,
    matmul,
    matvec,
    nullspace,
    nullspace_sparse,
    rank,
    rref_sparse,
    solve,
)

__all__ = [
    "ConductorMismatch",
    "Cyclotomic",
    "SingularMatrixError",
    "Solution",
    "cyc",
    "cyclotomic_polynomial",
    "format_cyclotomic",
    "identity",
    "inverse",
    "matmul",
    "matvec",
    "nullspace",
    "nullspace_sparse",
    "parse_cyclotomic",
    "rank",
    "rref_sparse",
    "solve",
    "totient",
]
