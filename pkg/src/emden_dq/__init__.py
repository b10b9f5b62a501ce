"""Meshless RBF differential-quadrature solver for Lane-Emden type problems.

The package solves singular second-order initial value problems

    y'' + (alpha/x) y' + f(x, y) = h(x),  y(0) = A,  y'(0) = B

on [0, L] by global radial-basis-function collocation: derivative values at
cosine-spaced nodes are expressed as weighted sums of all nodal values, the
weights coming from exact differentiation of the kernel interpolant. The
resulting nonlinear algebraic system is solved by damped Newton iteration
under configurable-precision arithmetic (the Gaussian interpolation matrix
is severely ill-conditioned, so 50+ decimal digits are the default).
"""

from .errors import (
    DimensionMismatch,
    EmdenDQError,
    InvalidGrid,
    MaxIterationsExceeded,
    NewtonDiverged,
    NonFiniteResidual,
    NoSignChange,
    NoZeroInDomain,
    PrecisionInsufficient,
    SingularJacobian,
    SingularMatrix,
    StiffnessFailure,
    UnknownProblem,
    UnsupportedM,
)
from .kernels import GAUSSIAN, INVERSE_MULTIQUADRIC, INVERSE_QUADRIC, MULTIQUADRIC, Kernel
from .numerics import (
    DEFAULT_CONTEXT,
    MULTIPRECISION,
    NATIVE_DOUBLE,
    DenseMatrix,
    LuFactorization,
    NewtonResult,
    PrecisionContext,
    brent_root,
    lu_factor,
    lu_solve,
    newton_solve,
)
from .oracles import ReferenceCurve, adm_series, exact_standard, first_zero_reference, rk_reference
from .problems import (
    CLOSURE_COLLOCATION,
    CLOSURE_LEAST_SQUARES,
    Problem,
    Solution,
    assemble_residual,
    catalog,
    first_zero,
    problem_by_name,
    solve,
    spow,
    standard_problem,
)
from .quadrature import (
    Interpolant,
    NodeSet,
    WeightMatrices,
    build_weights,
    cosine_spaced,
    eval_interpolant,
    fit_interpolant,
    interpolation_matrix,
    make_nodes,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONTEXT",
    "MULTIPRECISION",
    "NATIVE_DOUBLE",
    "GAUSSIAN",
    "MULTIQUADRIC",
    "INVERSE_MULTIQUADRIC",
    "INVERSE_QUADRIC",
    "CLOSURE_COLLOCATION",
    "CLOSURE_LEAST_SQUARES",
    "PrecisionContext",
    "DenseMatrix",
    "LuFactorization",
    "NewtonResult",
    "Kernel",
    "NodeSet",
    "WeightMatrices",
    "Interpolant",
    "Problem",
    "Solution",
    "ReferenceCurve",
    "lu_factor",
    "lu_solve",
    "brent_root",
    "newton_solve",
    "cosine_spaced",
    "make_nodes",
    "interpolation_matrix",
    "build_weights",
    "fit_interpolant",
    "eval_interpolant",
    "assemble_residual",
    "spow",
    "solve",
    "first_zero",
    "catalog",
    "standard_problem",
    "problem_by_name",
    "exact_standard",
    "adm_series",
    "rk_reference",
    "first_zero_reference",
    "EmdenDQError",
    "SingularMatrix",
    "DimensionMismatch",
    "NoSignChange",
    "SingularJacobian",
    "MaxIterationsExceeded",
    "InvalidGrid",
    "NonFiniteResidual",
    "NewtonDiverged",
    "PrecisionInsufficient",
    "NoZeroInDomain",
    "UnsupportedM",
    "StiffnessFailure",
    "UnknownProblem",
]
