"""Exception hierarchy for the emden_dq package.

Every error raised by the library derives from :class:`EmdenDQError` so that
callers (notably the CLI) can distinguish solver failures from programming
errors.
"""


class EmdenDQError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(EmdenDQError):
    """A pivot underflowed the working precision during LU factorization.

    For RBF interpolation matrices this signals a kernel / node-count /
    domain combination whose conditioning exceeds the context precision.
    """


class DimensionMismatch(EmdenDQError):
    """Vector or matrix dimensions are inconsistent."""


class NoSignChange(EmdenDQError):
    """A bracketing root finder was called without a sign change."""


class SingularJacobian(EmdenDQError):
    """The Newton Jacobian could not be factorized."""


class MaxIterationsExceeded(EmdenDQError):
    """Newton ran out of iterations (or stalled in backtracking).

    Carries the best iterate seen so far and its residual norm so callers
    can inspect (or accept) the partial result.
    """

    def __init__(self, message, best_x=None, residual_norm=None, iterations=0):
        super().__init__(message)
        self.best_x = best_x
        self.residual_norm = residual_norm
        self.iterations = iterations


class InvalidGrid(EmdenDQError):
    """Node generation was asked for an unusable point count or domain."""


class NonFiniteResidual(EmdenDQError):
    """Residual assembly produced a NaN or infinity."""


class NewtonDiverged(EmdenDQError):
    """The nonlinear solve for a problem failed to converge.

    Wraps :class:`MaxIterationsExceeded` with problem-level diagnostics.
    """

    def __init__(self, message, best_x=None, residual_norm=None, iterations=0):
        super().__init__(message)
        self.best_x = best_x
        self.residual_norm = residual_norm
        self.iterations = iterations


class PrecisionInsufficient(EmdenDQError):
    """The interpolation system's condition number exhausts the precision."""


class NoZeroInDomain(EmdenDQError):
    """No sign change of the solution was found up to the domain end."""


class UnsupportedM(EmdenDQError):
    """A closed-form solution was requested for an index that has none."""


class StiffnessFailure(EmdenDQError):
    """Adaptive integration stalled (step size underflow)."""


class UnknownProblem(EmdenDQError):
    """A problem name could not be resolved against the catalog."""
