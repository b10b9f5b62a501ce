"""Lane-Emden type problems and the end-to-end collocation solve.

A problem is the singular initial value problem

    y'' + (alpha/x) y' + f(x, y) = h(x),   y(0) = A,  y'(0) = B,

posed on [0, L]. Multiplying through by x removes the singularity; the
residual collocated at the nodes, together with the two initial conditions,
closes a nonlinear algebraic system in the nodal values which is solved by
damped Newton iteration. The catalog at the bottom provides the nine
benchmark instances (the standard polytrope family, the isothermal gas
sphere, sinh/sin nonlinearities and five problems with closed-form
solutions).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from mpmath import mpc

from . import numerics, quadrature
from .errors import (
    DimensionMismatch,
    MaxIterationsExceeded,
    NewtonDiverged,
    NonFiniteResidual,
    NoZeroInDomain,
    PrecisionInsufficient,
    SingularJacobian,
    SingularMatrix,
    UnknownProblem,
)
from .kernels import GAUSSIAN, Kernel
from .numerics import DEFAULT_CONTEXT, DenseMatrix, PrecisionContext
from .quadrature import NodeSet, WeightMatrices

IDENTITY = "identity"
LOG_SUBSTITUTION = "log-substitution"

CLOSURE_COLLOCATION = "collocation"
CLOSURE_LEAST_SQUARES = "least-squares"

X0_CONSTANT = "constant"
X0_LINEAR_DECAY = "linear-decay"
X0_SUPPLIED = "supplied"


@dataclass(frozen=True)
class Problem:
    """One Lane-Emden type instance.

    Attributes:
        name: Catalog identifier (e.g. ``"standard:m=1.5"``, ``"ex7"``).
        alpha: Coefficient of the y'/x term.
        nonlinearity: f(x, y).
        dnonlinearity_dy: Optional analytic df/dy used for the Newton
            Jacobian; finite differences are used when absent.
        forcing: Optional right-hand side h(x); None means zero.
        y0, dy0: Initial values A = y(0) and B = y'(0).
        default_L, default_N: Domain length and node count used when the
            caller does not override them. These are configuration, not
            constants; every run records the values actually used.
        transform: ``"identity"`` or ``"log-substitution"``. The latter
            solves for z = ln(y) (so y = e^z stays positive) and requires
            y0 > 0.
        reference: Optional exact solution y(x).
        probe_points: Abscissae at which result tables are reported.
        default_x0_strategy: Newton initial guess recipe.
    """

    name: str
    alpha: object
    nonlinearity: Callable
    dnonlinearity_dy: Callable | None = None
    forcing: Callable | None = None
    y0: object = 1
    dy0: object = 0
    default_L: float = 1.0
    default_N: int = 30
    transform: str = IDENTITY
    reference: Callable | None = None
    probe_points: tuple = ()
    default_x0_strategy: str = X0_CONSTANT

    def __post_init__(self):
        if self.transform not in (IDENTITY, LOG_SUBSTITUTION):
            raise ValueError(f"unknown transform {self.transform!r}")
        if self.transform == LOG_SUBSTITUTION and not self.y0 > 0:
            raise ValueError("log-substitution requires a positive initial value")
        if not self.default_L > 0 or self.default_N < 4:
            raise ValueError("default_L must be positive and default_N >= 4")

    @property
    def has_reference(self) -> bool:
        return self.reference is not None


@dataclass(frozen=True)
class Solution:
    """Converged nodal solution plus diagnostics.

    ``nodal_values`` are in the solve variables (z when the problem uses the
    log substitution); ``y_values`` always gives y itself. The interpolant
    is built on the y samples.
    """

    problem: Problem
    nodes: NodeSet
    nodal_values: tuple
    interpolant: quadrature.Interpolant
    newton_iters: int
    final_residual_norm: object
    condition_estimate: object
    ctx: PrecisionContext
    kernel: Kernel
    closure: str
    weights: WeightMatrices
    precision_warning: bool = False

    @property
    def y_values(self) -> tuple:
        if self.problem.transform == LOG_SUBSTITUTION:
            return tuple(numerics.exp(z) for z in self.nodal_values)
        return self.nodal_values

    def y_at(self, x):
        """Interpolated solution value at ``x``."""
        with self.ctx.scope():
            return self.interpolant(self.ctx.num(x))

    def residual_at(self, x):
        """Residual of the governing equation at an arbitrary point.

        Evaluates x*y'' + alpha*y' + x*(f(x, y) - h(x)) on the fitted
        interpolant, which is how table rows report accuracy between nodes.
        """
        with self.ctx.scope():
            x = self.ctx.num(x)
            p = self.problem
            y = self.interpolant(x)
            d1 = self.interpolant.derivative(x, 1)
            d2 = self.interpolant.derivative(x, 2)
            h = p.forcing(x) if p.forcing is not None else 0
            return x * d2 + p.alpha * d1 + x * (p.nonlinearity(x, y) - h)


def spow(y, m):
    """Sign-preserving power: y^m for y >= 0, odd extension below zero.

    Keeps fractional powers real when Newton iterates dip below zero near
    the first root of the solution.
    """
    if y == 0:
        return y
    if y > 0:
        return y ** m
    return -((-y) ** m)


def assemble_residual(
    p: Problem,
    W: WeightMatrices,
    nodes: NodeSet | None,
    f: Sequence,
    ctx: PrecisionContext | None = None,
) -> tuple:
    """Residual of the x-multiplied equation at every node.

    For the identity transform node i contributes
    ``x_i*(W2 f)_i + alpha*(W1 f)_i + x_i*(f(x_i, f_i) - h(x_i))``; at
    x_1 = 0 only the first-derivative term survives. Under the log
    substitution the z-form gains the x*(z')^2 term and the nonlinearity
    enters as x*e^(-z)*(f(x, e^z) - h(x)).

    Raises:
        NonFiniteResidual: If any entry comes out non-finite or complex.
        DimensionMismatch: If ``f`` has the wrong length.
    """
    if nodes is None:
        nodes = W.nodes
    ctx = ctx or W.ctx
    n = nodes.n_points
    if len(f) != n:
        raise DimensionMismatch(f"{n} nodes but {len(f)} values")
    with ctx.scope():
        pts = nodes.points
        try:
            s1 = W.w1.matvec(f)
            s2 = W.w2.matvec(f)
            res = []
            if p.transform == LOG_SUBSTITUTION:
                for i in range(n):
                    x = pts[i]
                    y = numerics.exp(f[i])
                    h = p.forcing(x) if p.forcing is not None else 0
                    res.append(
                        x * s2[i]
                        + x * s1[i] * s1[i]
                        + p.alpha * s1[i]
                        + x * (p.nonlinearity(x, y) - h) / y
                    )
            else:
                for i in range(n):
                    x = pts[i]
                    h = p.forcing(x) if p.forcing is not None else 0
                    res.append(
                        x * s2[i]
                        + p.alpha * s1[i]
                        + x * (p.nonlinearity(x, f[i]) - h)
                    )
        except (ValueError, OverflowError, ZeroDivisionError) as err:
            raise NonFiniteResidual(str(err)) from err
        for v in res:
            if isinstance(v, (mpc, complex)) or not numerics.isfinite(v):
                raise NonFiniteResidual("residual has a non-finite or complex entry")
        return tuple(res)


def _transformed_ics(p: Problem, ctx: PrecisionContext):
    A = ctx.num(p.y0)
    B = ctx.num(p.dy0)
    if p.transform == LOG_SUBSTITUTION:
        return numerics.log(A), B / A
    return A, B


def _initial_guess(p: Problem, nodes: NodeSet, strategy: str, ctx: PrecisionContext):
    """Full-length starting vector in the solve variables."""
    A = ctx.num(p.y0)
    if strategy == X0_CONSTANT:
        y = [A] * nodes.n_points
    elif strategy == X0_LINEAR_DECAY:
        L = nodes.domain_length
        floor = ctx.num("0.05")
        y = [max(A * (1 - x / L), floor) for x in nodes.points]
    else:
        raise ValueError(f"unknown x0 strategy {strategy!r}")
    if p.transform == LOG_SUBSTITUTION:
        return [numerics.log(v) for v in y]
    return y


def _nonlinear_diag(p: Problem, x, fi):
    """d(residual nonlinear term at a node)/d(solve variable at that node)."""
    if p.transform == LOG_SUBSTITUTION:
        y = numerics.exp(fi)
        h = p.forcing(x) if p.forcing is not None else 0
        return x * (p.dnonlinearity_dy(x, y) - (p.nonlinearity(x, y) - h) / y)
    return x * p.dnonlinearity_dy(x, fi)


def derivative_self_check(W: WeightMatrices, ctx: PrecisionContext):
    """Realized relative accuracy of the weight matrices as derivative rules.

    Differentiates a smooth non-polynomial test function through W1 and W2
    and compares against the exact derivatives. This measures what the
    conditioning actually cost: for flat Gaussian kernels the usable
    accuracy degrades like the square root of the condition number, so the
    condition estimate alone (which saturates near 10^digits) cannot tell a
    healthy configuration from a hopeless one.
    """
    with ctx.scope():
        L = W.nodes.domain_length
        pts = W.nodes.points
        half = ctx.num(1) / 2
        g = [numerics.sin(2 * x / L + half) for x in pts]
        g1 = [2 / L * numerics.cos(2 * x / L + half) for x in pts]
        g2 = [-4 / (L * L) * v for v in g]
        d1 = W.w1.matvec(g)
        d2 = W.w2.matvec(g)
        e1 = max(abs(d1[i] - g1[i]) for i in range(len(pts))) / max(
            abs(v) for v in g1
        )
        e2 = max(abs(d2[i] - g2[i]) for i in range(len(pts))) / max(
            abs(v) for v in g2
        )
        return max(e1, e2)


class _ClosedSystem:
    """Reduced nonlinear system with the value initial condition eliminated.

    The unknowns are the nodal values at nodes 2..N (the first nodal value
    is pinned to the initial value exactly). The closed system stacks the
    discrete derivative initial condition on top of the residual at the
    enforced interior nodes: nodes 2..N-1 for the square collocation
    closure, nodes 2..N for the overdetermined least-squares closure.
    """

    def __init__(self, p, W, ctx, closure):
        self.p = p
        self.W = W
        self.ctx = ctx
        self.nodes = W.nodes
        n = self.nodes.n_points
        last = n - 1 if closure == CLOSURE_COLLOCATION else n
        self.enforced = tuple(range(1, last))
        self.z0, self.dz0 = _transformed_ics(p, ctx)
        self.analytic = p.dnonlinearity_dy is not None

    def full_vector(self, u):
        return (self.z0,) + tuple(u)

    def residual(self, u):
        f = self.full_vector(u)
        res = assemble_residual(self.p, self.W, self.nodes, f, self.ctx)
        s1_first = sum(
            self.W.w1.entry(0, j) * f[j] for j in range(len(f))
        )
        return (s1_first - self.dz0,) + tuple(res[i] for i in self.enforced)

    def jacobian(self, u):
        f = self.full_vector(u)
        p, W, pts = self.p, self.W, self.nodes.points
        n = len(f)
        rows = [[W.w1.entry(0, j) for j in range(1, n)]]
        if p.transform == LOG_SUBSTITUTION:
            s1 = W.w1.matvec(f)
        for i in self.enforced:
            x = pts[i]
            if p.transform == LOG_SUBSTITUTION:
                d1_coeff = 2 * x * s1[i] + p.alpha
            else:
                d1_coeff = p.alpha
            row = [
                x * W.w2.entry(i, j) + d1_coeff * W.w1.entry(i, j)
                for j in range(1, n)
            ]
            row[i - 1] += _nonlinear_diag(p, x, f[i])
            rows.append(row)
        return DenseMatrix(rows)


def _gauss_newton(system, u0, tol, max_iter, ctx):
    """Damped Gauss-Newton for the overdetermined closure.

    Stops on the residual tolerance, on a negligible step, or when
    backtracking can no longer reduce the residual 2-norm (the
    least-squares plateau); the last two count as convergence to the
    least-squares solution and the reported norm states what was achieved.
    """
    u = tuple(u0)
    r = system.residual(u)
    norm2 = numerics.sqrt(sum(v * v for v in r))
    step_floor = ctx.power_of_ten(-(ctx.decimal_digits // 2))
    for iteration in range(max_iter):
        if numerics.inf_norm(r) <= tol:
            return u, iteration, numerics.inf_norm(r)
        if system.analytic:
            J = system.jacobian(u)
        else:
            J = numerics.fd_jacobian(system.residual, u, r, ctx)
        m, n = J.rows, J.cols
        jtj = [
            [
                sum(J.entry(k, i) * J.entry(k, j) for k in range(m))
                for j in range(n)
            ]
            for i in range(n)
        ]
        jtr = [sum(J.entry(k, i) * r[k] for k in range(m)) for i in range(n)]
        try:
            F = numerics.lu_factor(DenseMatrix(jtj), ctx)
        except SingularMatrix as err:
            raise SingularJacobian(f"normal equations singular: {err}") from err
        delta = numerics.lu_solve(F, [-v for v in jtr])
        lam = ctx.num(1)
        improved = False
        for _ in range(21):
            trial = tuple(u[i] + lam * delta[i] for i in range(n))
            try:
                r_trial = system.residual(trial)
                n_trial = numerics.sqrt(sum(v * v for v in r_trial))
            except NonFiniteResidual:
                lam /= 2
                continue
            if n_trial < norm2:
                u, r, norm2 = trial, r_trial, n_trial
                improved = True
                break
            lam /= 2
        step = numerics.inf_norm(delta) * lam
        if not improved or step <= step_floor * (1 + numerics.inf_norm(u)):
            return u, iteration + 1, numerics.inf_norm(r)
    return u, max_iter, numerics.inf_norm(r)


def solve(
    p: Problem,
    N: int | None = None,
    L=None,
    k: Kernel | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    x0_strategy: str | None = None,
    x0: Sequence | None = None,
    closure: str = CLOSURE_COLLOCATION,
    newton_tol=None,
    max_iter: int = 100,
    jacobian_mode: str = "analytic",
) -> Solution:
    """Solve a problem end to end on N cosine-spaced nodes over [0, L].

    Args:
        p: The problem instance.
        N, L: Node count and domain length; default to the problem's.
        k: Kernel (default Gaussian with c = 1).
        ctx: Working precision.
        x0_strategy: ``"constant"``, ``"linear-decay"`` or ``"supplied"``
            (then pass ``x0``); defaults to the problem's recipe.
        closure: ``"collocation"`` enforces the residual at the interior
            nodes 2..N-1 (square system); ``"least-squares"`` also enforces
            node N and solves the overdetermined system by Gauss-Newton.
        newton_tol: Residual tolerance; default 10^(10 - digits).
        jacobian_mode: ``"analytic"`` (falls back to finite differences if
            the problem carries no derivative) or ``"finite-difference"``.

    Raises:
        NewtonDiverged: No convergence; carries the best iterate data.
        PrecisionInsufficient: The built weights fail a direct derivative
            accuracy probe (conditioning ate the working precision).
        SingularMatrix: Unusable kernel/node configuration.
    """
    if closure not in (CLOSURE_COLLOCATION, CLOSURE_LEAST_SQUARES):
        raise ValueError(f"unknown closure {closure!r}")
    N = N if N is not None else p.default_N
    L = L if L is not None else p.default_L
    k = k or Kernel(GAUSSIAN, 1)
    with ctx.scope():
        nodes = quadrature.make_nodes(N, L, ctx)
        W = quadrature.build_weights(k, nodes, ctx)
        warn = W.condition_estimate > ctx.power_of_ten(ctx.decimal_digits - 10)
        check = derivative_self_check(W, ctx)
        if warn and check > ctx.num("1e-4"):
            # The weights are inaccurate AND the conditioning has consumed
            # the working precision, so more digits (not just more nodes)
            # are needed. A failed probe at benign conditioning is plain
            # under-resolution and is left to the caller.
            raise PrecisionInsufficient(
                f"differentiation weights deliver only {_sci(check)} relative "
                f"accuracy at {ctx.decimal_digits} digits (condition estimate "
                f"{_sci(W.condition_estimate)}); raise the working precision"
            )
        tol = (
            ctx.num(newton_tol)
            if newton_tol is not None
            else ctx.power_of_ten(10 - ctx.decimal_digits)
        )
        system = _ClosedSystem(p, W, ctx, closure)
        strategy = x0_strategy or (
            X0_SUPPLIED if x0 is not None else p.default_x0_strategy
        )
        if strategy == X0_SUPPLIED:
            if x0 is None:
                raise ValueError("x0_strategy='supplied' requires x0")
            full = ctx.vector(x0)
            if len(full) == N:
                u0 = full[1:]
            elif len(full) == N - 1:
                u0 = full
            else:
                raise DimensionMismatch(f"x0 must have {N} or {N - 1} entries")
        else:
            u0 = _initial_guess(p, nodes, strategy, ctx)[1:]
        use_analytic = jacobian_mode == "analytic" and system.analytic
        try:
            if closure == CLOSURE_LEAST_SQUARES:
                u, iters, norm = _gauss_newton(system, u0, tol, max_iter, ctx)
            else:
                result = numerics.newton_solve(
                    system.residual,
                    u0,
                    jacobian=system.jacobian if use_analytic else None,
                    tol=tol,
                    max_iter=max_iter,
                    ctx=ctx,
                )
                u, iters, norm = result.x, result.iterations, result.residual_norm
        except MaxIterationsExceeded as err:
            raise NewtonDiverged(
                f"{p.name}: Newton failed (N={N}, L={L}, "
                f"digits={ctx.decimal_digits}): {err}",
                best_x=err.best_x,
                residual_norm=err.residual_norm,
                iterations=err.iterations,
            ) from err
        nodal = system.full_vector(u)
        if p.transform == LOG_SUBSTITUTION:
            y_samples = [numerics.exp(z) for z in nodal]
        else:
            y_samples = list(nodal)
        interp = quadrature.fit_interpolant(W, y_samples)
        return Solution(
            problem=p,
            nodes=nodes,
            nodal_values=tuple(nodal),
            interpolant=interp,
            newton_iters=iters,
            final_residual_norm=norm,
            condition_estimate=W.condition_estimate,
            ctx=ctx,
            kernel=k,
            closure=closure,
            weights=W,
            precision_warning=bool(warn),
        )


def first_zero(s: Solution):
    """Smallest positive root of the interpolated solution.

    Scans the nodal values for the first sign change and refines it with
    Brent's method on the interpolant. When the nodal values do not change
    sign, a band of width 5% of L around the domain end is searched (the
    root may sit just beyond the last node).

    Raises:
        NoZeroInDomain: If no sign change is found; L was chosen below the
            first root.
    """
    ctx = s.ctx
    with ctx.scope():
        ys = s.y_values
        pts = s.nodes.points
        tol = ctx.power_of_ten(-(ctx.decimal_digits // 2))
        g = s.interpolant
        for i in range(len(pts)):
            if ys[i] == 0 and pts[i] > 0:
                return pts[i]
            if i + 1 < len(pts) and numerics.sign(ys[i]) * numerics.sign(ys[i + 1]) < 0:
                return numerics.brent_root(g, pts[i], pts[i + 1], tol, ctx)
        L = s.nodes.domain_length
        delta = L / 20
        lo = L - delta
        samples = 41
        prev_x = lo
        prev_v = g(prev_x)
        for j in range(1, samples):
            xj = lo + (2 * delta) * j / (samples - 1)
            vj = g(xj)
            if numerics.sign(prev_v) * numerics.sign(vj) < 0:
                return numerics.brent_root(g, prev_x, xj, tol, ctx)
            prev_x, prev_v = xj, vj
        raise NoZeroInDomain(
            f"{s.problem.name}: no sign change up to L={L} "
            "(domain ends before the first root)"
        )


def _sci(v) -> str:
    try:
        return f"{float(v):.3e}"
    except (OverflowError, ValueError):
        return str(v)


# ---------------------------------------------------------------------------
# Catalog: the nine benchmark problems
# ---------------------------------------------------------------------------

# Published first zeros of the standard equation (Horedt's tables); the
# default domain ends 0.5% past the zero so the root finder has a bracket.
STANDARD_FIRST_ZEROS = {
    0.0: 2.449489742783178,  # sqrt(6)
    1.0: 3.141592653589793,  # pi
    1.5: 3.65375374,
    2.0: 4.35287460,
    2.5: 5.35527546,
    3.0: 6.89684862,
    4.0: 14.9715463,
}

_STANDARD_DEFAULT_N = {1.5: 30, 2.0: 40, 2.5: 30, 3.0: 30, 4.0: 60}

_STANDARD_PROBES = {
    1.5: (0.0, 0.1, 0.5, 1.0, 3.0, 3.6, 3.65),
    2.0: (0.0, 0.1, 0.5, 3.0, 4.3, 4.35),
    2.5: (0.0, 0.1, 0.5, 1.0, 4.0, 5.0, 5.3, 5.355),
    3.0: (0.0, 0.1, 0.5, 1.0, 5.0, 6.0, 6.8, 6.896),
    4.0: (0.0, 0.1, 0.2, 0.5, 1.0, 5.0, 10.0, 14.0, 14.9),
    0.0: (0.0, 0.5, 1.0, 1.5, 2.0, 2.4),
    1.0: (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
    5.0: (0.0, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0),
}


def _standard_default_L(m: float) -> float:
    if m in STANDARD_FIRST_ZEROS:
        return 1.005 * STANDARD_FIRST_ZEROS[m]
    if m >= 4.5:
        return 8.0
    if m > 4.0:
        return 16.0
    ms = sorted(STANDARD_FIRST_ZEROS)
    for lo, hi in zip(ms, ms[1:]):
        if lo < m < hi:
            z_lo, z_hi = STANDARD_FIRST_ZEROS[lo], STANDARD_FIRST_ZEROS[hi]
            return 1.005 * (z_lo + (z_hi - z_lo) * (m - lo) / (hi - lo))
    return 8.0


def _standard_reference(m: float) -> Callable | None:
    if m == 0.0:
        return lambda x: 1 - x * x / 6
    if m == 1.0:
        return lambda x: 1 + 0 * x if x == 0 else numerics.sin(x) / x
    if m == 5.0:
        return lambda x: 1 / numerics.sqrt(1 + x * x / 3)
    return None


def _standard_probes(m: float, L: float) -> tuple:
    if m in _STANDARD_PROBES:
        return _STANDARD_PROBES[m]
    return tuple(round(L * frac, 2) for frac in (0.0, 0.1, 0.25, 0.5, 0.75, 0.9))


def standard_problem(m) -> Problem:
    """The standard polytrope equation y'' + (2/x) y' + y^m = 0, y(0)=1.

    The power is applied sign-preservingly so fractional m stays real when
    iterates dip below zero near the first root; m = 0 uses the constant
    nonlinearity 1 (the closed form 1 - x^2/6 then holds on both sides of
    the root).
    """
    m = float(m)
    if m < 0:
        raise ValueError("polytropic index m must be nonnegative")
    if m == 0.0:
        f = lambda x, y: 1
        df = lambda x, y: 0
    else:
        f = lambda x, y, _m=m: spow(y, _m)
        df = lambda x, y, _m=m: _m * abs(y) ** (_m - 1)
    L = _standard_default_L(m)
    return Problem(
        name=f"standard:m={m:g}",
        alpha=2,
        nonlinearity=f,
        dnonlinearity_dy=df,
        y0=1,
        dy0=0,
        default_L=L,
        default_N=_STANDARD_DEFAULT_N.get(m, 30),
        reference=_standard_reference(m),
        probe_points=_standard_probes(m, L),
        default_x0_strategy=X0_LINEAR_DECAY if m >= 3 else X0_CONSTANT,
    )


def _isothermal() -> Problem:
    return Problem(
        name="isothermal",
        alpha=2,
        nonlinearity=lambda x, y: numerics.exp(y),
        dnonlinearity_dy=lambda x, y: numerics.exp(y),
        y0=0,
        dy0=0,
        default_L=2.5,
        default_N=30,
        probe_points=(0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 2.5),
    )


def _sinh_problem() -> Problem:
    return Problem(
        name="sinh",
        alpha=2,
        nonlinearity=lambda x, y: numerics.sinh(y),
        dnonlinearity_dy=lambda x, y: numerics.cosh(y),
        y0=1,
        dy0=0,
        default_L=2.0,
        default_N=30,
        probe_points=(0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0),
    )


def _sin_problem() -> Problem:
    return Problem(
        name="sin",
        alpha=2,
        nonlinearity=lambda x, y: numerics.sin(y),
        dnonlinearity_dy=lambda x, y: numerics.cos(y),
        y0=1,
        dy0=0,
        default_L=2.0,
        default_N=30,
        probe_points=(0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0),
    )


_DECADE_PROBES = (0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0)


def _ex5() -> Problem:
    def f(x, y):
        return 4 * (2 * numerics.exp(y) + numerics.exp(y / 2))

    def df(x, y):
        return 8 * numerics.exp(y) + 2 * numerics.exp(y / 2)

    return Problem(
        name="ex5",
        alpha=2,
        nonlinearity=f,
        dnonlinearity_dy=df,
        y0=0,
        dy0=0,
        default_L=10.0,
        default_N=40,
        reference=lambda x: -2 * numerics.log(1 + x * x),
        probe_points=_DECADE_PROBES,
    )


_UNIT_PROBES = (0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 0.7, 0.8, 0.9, 1.0)


def _ex6() -> Problem:
    def f(x, y):
        return -6 * y - 4 * y * numerics.log(y)

    def df(x, y):
        return -10 - 4 * numerics.log(y)

    return Problem(
        name="ex6",
        alpha=2,
        nonlinearity=f,
        dnonlinearity_dy=df,
        y0=1,
        dy0=0,
        default_L=1.0,
        default_N=35,
        transform=LOG_SUBSTITUTION,
        reference=lambda x: numerics.exp(x * x),
        probe_points=_UNIT_PROBES,
    )


def _ex7() -> Problem:
    return Problem(
        name="ex7",
        alpha=2,
        nonlinearity=lambda x, y: -2 * (2 * x * x + 3) * y,
        dnonlinearity_dy=lambda x, y: -2 * (2 * x * x + 3),
        y0=1,
        dy0=0,
        default_L=1.0,
        default_N=35,
        reference=lambda x: numerics.exp(x * x),
        probe_points=_UNIT_PROBES,
    )


def _ex8() -> Problem:
    return Problem(
        name="ex8",
        alpha=8,
        nonlinearity=lambda x, y: x * y,
        dnonlinearity_dy=lambda x, y: x,
        forcing=lambda x: x**5 - x**4 + 44 * x * x - 30 * x,
        y0=0,
        dy0=0,
        default_L=10.0,
        default_N=45,
        reference=lambda x: x**3 * (x - 1),
        probe_points=_DECADE_PROBES,
    )


def _ex9() -> Problem:
    return Problem(
        name="ex9",
        alpha=2,
        nonlinearity=lambda x, y: y,
        dnonlinearity_dy=lambda x, y: 1,
        forcing=lambda x: 6 + 12 * x + x * x + x**3,
        y0=0,
        dy0=0,
        default_L=10.0,
        default_N=45,
        reference=lambda x: x * x * (1 + x),
        probe_points=_DECADE_PROBES,
    )


def catalog() -> list[Problem]:
    """The nine benchmark problems with their per-problem defaults."""
    return [
        standard_problem(1.5),
        _isothermal(),
        _sinh_problem(),
        _sin_problem(),
        _ex5(),
        _ex6(),
        _ex7(),
        _ex8(),
        _ex9(),
    ]


def problem_by_name(name: str) -> Problem:
    """Resolve a problem name like ``"ex7"`` or ``"standard:m=2"``.

    Raises:
        UnknownProblem: If the name does not match any catalog entry.
    """
    key = name.strip().lower()
    if key.startswith("standard"):
        rest = key[len("standard"):]
        if rest in ("", ":"):
            return standard_problem(1.5)
        if rest.startswith(":m="):
            try:
                return standard_problem(float(rest[3:]))
            except ValueError as err:
                raise UnknownProblem(f"bad polytropic index in {name!r}") from err
        raise UnknownProblem(f"unknown problem {name!r}")
    for p in catalog():
        if p.name == key:
            return p
    raise UnknownProblem(
        f"unknown problem {name!r}; valid names: standard[:m=<value>], "
        "isothermal, sinh, sin, ex5, ex6, ex7, ex8, ex9"
    )
