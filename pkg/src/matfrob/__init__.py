"""Matrix functions on real Jordan structure, with strong Perron-Frobenius
and eventual-positivity checks.

The public surface re-exports the working set: tolerance policy and dense
kernels (core), factored real Jordan forms (jordan), the scalar function
calculus and matrix_function (funcalc), and the property checks tying the
scalar conditions to the matrix-level outcome (perron).
"""

from .core import (
    DEFAULT_TOL,
    DimensionMismatchError,
    MatFrobError,
    PreconditionError,
    SingularMatrixError,
    SolverConvergenceError,
    Tolerance,
    condition_estimate,
    eigen_decompose,
    mat_inverse,
    mat_mul,
)
from .funcalc import (
    Abs,
    CheckResult,
    ConjugateSymmetryError,
    DomainDescriptor,
    DomainError,
    Exp,
    Monomial,
    NonDifferentiableError,
    NonRealResultError,
    NotDefinedOnSpectrumError,
    NotEntireError,
    Polynomial,
    PrincipalRoot,
    ScaledSum,
    SpectralFunction,
    defined_on_spectrum,
    func_jordan_block,
    func_real_jordan_block,
    matrix_function,
    reflection_check,
    taylor_oracle,
)
from .jordan import (
    DefectiveMatrixError,
    IllConditionedError,
    IllConditionedWarning,
    JordanSpec,
    RealJordanFactors,
    assemble_real_jordan,
    extract_diagonalizable_structure,
    jordan_block,
    real_jordan_block,
    rotation_block,
    synthesize_matrix,
)
from .perron import (
    EventualPositivityReport,
    FrobeniusVerdict,
    PerronReport,
    PreservationResult,
    derivative_reality_check,
    eventually_positive_check,
    frobenius_check,
    power_threshold,
    spectral_radius,
    strong_pf_check,
    verify_preservation_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "MatFrobError",
    "DimensionMismatchError",
    "SingularMatrixError",
    "SolverConvergenceError",
    "PreconditionError",
    "mat_mul",
    "mat_inverse",
    "condition_estimate",
    "eigen_decompose",
    "JordanSpec",
    "RealJordanFactors",
    "jordan_block",
    "rotation_block",
    "real_jordan_block",
    "assemble_real_jordan",
    "synthesize_matrix",
    "extract_diagonalizable_structure",
    "DefectiveMatrixError",
    "IllConditionedError",
    "IllConditionedWarning",
    "SpectralFunction",
    "DomainDescriptor",
    "Monomial",
    "PrincipalRoot",
    "Abs",
    "Exp",
    "Polynomial",
    "ScaledSum",
    "CheckResult",
    "defined_on_spectrum",
    "reflection_check",
    "func_jordan_block",
    "func_real_jordan_block",
    "matrix_function",
    "taylor_oracle",
    "DomainError",
    "NonDifferentiableError",
    "ConjugateSymmetryError",
    "NonRealResultError",
    "NotEntireError",
    "NotDefinedOnSpectrumError",
    "PerronReport",
    "EventualPositivityReport",
    "FrobeniusVerdict",
    "PreservationResult",
    "spectral_radius",
    "strong_pf_check",
    "eventually_positive_check",
    "power_threshold",
    "frobenius_check",
    "verify_preservation_theorem",
    "derivative_reality_check",
]
