"""Acceptance checks for the solver, shared by the CLI and the test suite.

Each criterion function returns a list of ``(label, passed, detail)``
triples; :func:`run_all` prints one PASS/FAIL line per criterion. The
checks pin every tolerance explicitly and compare against published
benchmark values (Horedt's polytrope tables) and this package's own
independent Runge-Kutta oracle.

Solves are cached per configuration so overlapping criteria do not repeat
work; everything here is deterministic.
"""

from __future__ import annotations

from . import kernels, numerics, oracles, problems, quadrature
from .kernels import GAUSSIAN, Kernel
from .numerics import PrecisionContext

HOREDT_ZEROS = {
    1.5: ("3.65375374", 1e-5, 30),
    2.0: ("4.35287460", 1e-5, 40),
    2.5: ("5.35527546", 1e-5, 30),
    3.0: ("6.89684862", 1e-5, 30),
    4.0: ("14.9715463", 1e-3, 60),
}

# Pointwise values from Horedt's integrations (7 printed significant digits).
HOREDT_POINTS = {
    1.5: (1.0, "0.8451698"),
    2.0: (3.0, "0.2418241"),
    2.5: (5.0, "2.901919e-2"),
    3.0: (6.0, "4.373798e-2"),
}

_solve_cache: dict = {}
_weights_cache: dict = {}
_curve_cache: dict = {}


def cached_solution(name, N=None, L=None, digits=50, closure=problems.CLOSURE_COLLOCATION):
    key = (name, N, L, digits, closure)
    if key not in _solve_cache:
        p = problems.problem_by_name(name)
        _solve_cache[key] = problems.solve(
            p, N=N, L=L, ctx=PrecisionContext(digits), closure=closure
        )
    return _solve_cache[key]


def cached_weights(N, L=1.0, digits=50, c=1):
    key = (N, L, digits, c)
    if key not in _weights_cache:
        ctx = PrecisionContext(digits)
        nodes = quadrature.make_nodes(N, L, ctx)
        _weights_cache[key] = quadrature.build_weights(Kernel(GAUSSIAN, c), nodes, ctx)
    return _weights_cache[key]


def cached_curve(name, x_end, rel_tol=1e-12, digits=30):
    key = (name, x_end, rel_tol, digits)
    if key not in _curve_cache:
        p = problems.problem_by_name(name)
        _curve_cache[key] = oracles.rk_reference(
            p, x_end, rel_tol, PrecisionContext(digits)
        )
    return _curve_cache[key]


def _f(v) -> float:
    return float(v)


def _check(label, value, bound) -> tuple:
    ok = value <= bound
    return (label, bool(ok), f"{_f(value):.3e} (bound {_f(bound):.3e})")


def _max_nodal_error(sol, reference):
    ctx = sol.ctx
    with ctx.scope():
        return max(
            abs(sol.y_values[i] - reference(x))
            for i, x in enumerate(sol.nodes.points)
        )


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


def criterion_1():
    """Exact-solution closed loop for the m=1 standard problem."""
    ctx = PrecisionContext(50)
    sol = cached_solution("standard:m=1", N=30, L=3.2, digits=50)
    with ctx.scope():
        err = _max_nodal_error(sol, lambda x: oracles.exact_standard(1, x, ctx))
        zero = problems.first_zero(sol)
        zero_err = abs(zero - ctx.pi)
    return [
        _check("m=1 max nodal error vs sin(x)/x", err, ctx.num("1e-8")),
        _check("m=1 first zero vs pi", zero_err, ctx.num("1e-6")),
    ]


def criterion_2():
    """First zeros of the standard family against Horedt's values."""
    out = []
    ctx = PrecisionContext(50)
    for m, (printed, tol, n) in HOREDT_ZEROS.items():
        sol = cached_solution(f"standard:m={m:g}", N=n, digits=50)
        with ctx.scope():
            zero = problems.first_zero(sol)
            diff = abs(zero - ctx.num(printed))
        out.append(_check(f"m={m:g} first zero vs {printed} (N={n})", diff, ctx.num(tol)))
    return out


def criterion_3():
    """Pointwise solution values against the RK oracle (and Horedt)."""
    out = []
    ctx = PrecisionContext(50)
    for m, (x, printed) in HOREDT_POINTS.items():
        n = HOREDT_ZEROS[m][2]
        sol = cached_solution(f"standard:m={m:g}", N=n, digits=50)
        curve = cached_curve(f"standard:m={m:g}", x)
        with ctx.scope():
            rk = ctx.num(curve.eval(x))
            rbf = sol.y_at(x)
            out.append(
                _check(f"m={m:g} y({x}) vs RK oracle", abs(rbf - rk), ctx.num("1e-6"))
            )
            out.append(
                _check(
                    f"m={m:g} RK oracle vs printed {printed}",
                    abs(rk - ctx.num(printed)),
                    ctx.num("1e-6"),
                )
            )
    return out


def criterion_4():
    """Isothermal gas sphere values against the RK oracle."""
    ctx = PrecisionContext(50)
    sol = cached_solution("isothermal", digits=50)
    curve = cached_curve("isothermal", 2.5)
    out = []
    with ctx.scope():
        for x, tol, printed in ((1.0, "1e-6", "-0.15882767"), (2.5, "5e-6", "-0.80634087")):
            rk = ctx.num(curve.eval(x))
            diff = abs(sol.y_at(x) - rk)
            out.append(_check(f"isothermal y({x}) vs RK oracle", diff, ctx.num(tol)))
            out.append(
                _check(
                    f"isothermal RK vs printed {printed}",
                    abs(rk - ctx.num(printed)),
                    ctx.num("1e-6"),
                )
            )
    return out


def criterion_5():
    """Problems with closed forms at their table configurations."""

    def probe_error(sol):
        p = sol.problem
        ctx = sol.ctx
        with ctx.scope():
            return max(
                abs(sol.y_at(ctx.num(x)) - p.reference(ctx.num(x)))
                for x in p.probe_points
            )

    out = []
    sol5 = cached_solution("ex5", N=40, digits=60)
    out.append(_check("ex5 probe error (N=40, digits=60)", probe_error(sol5), 1e-4))
    sol7 = cached_solution("ex7", N=35, digits=60)
    out.append(_check("ex7 probe error (N=35, digits=60)", probe_error(sol7), 1e-9))
    sol6 = cached_solution("ex6", N=35, digits=60)
    out.append(_check("ex6 probe error (N=35, digits=60)", probe_error(sol6), 1e-9))
    sol8 = cached_solution("ex8", N=45, digits=50)
    out.append(_check("ex8 probe error (N=45)", probe_error(sol8), 1e-2))
    sol9 = cached_solution("ex9", N=45, digits=50)
    out.append(_check("ex9 probe error (N=45)", probe_error(sol9), 1e-2))
    sol7hp = cached_solution("ex7", N=35, digits=100)
    out.append(
        _check("ex7 probe error at digits=100", probe_error(sol7hp), 1e-18)
    )
    return out


def criterion_6():
    """Property suite: weight identities, reproduction, ICs, residuals, oracle."""
    out = []
    # Defining identity of the weight systems: applying a weight row to the
    # kernel values must reproduce the kernel derivative at the node.
    for n in (10, 20, 30):
        W = cached_weights(n, 1.0, 50)
        ctx = W.ctx
        k = W.kernel
        pts = W.nodes.points
        with ctx.scope():
            slack = W.condition_estimate * ctx.power_of_ten(2 - ctx.decimal_digits)
            worst = ctx.num(0)
            for deriv, wmat in ((kernels.d1, W.w1), (kernels.d2, W.w2)):
                for kk in range(n):
                    phi = [kernels.eval(k, pts[j], pts[kk]) for j in range(n)]
                    dphi = [deriv(k, pts[i], pts[kk]) for i in range(n)]
                    scale = max(abs(v) for v in dphi)
                    for i in range(n):
                        lhs = sum(wmat.entry(i, j) * phi[j] for j in range(n))
                        rel = abs(lhs - dphi[i]) / scale
                        if rel > worst:
                            worst = rel
            out.append(_check(f"defining identity N={n}", worst, slack))
    # Interpolation reproduces its nodal data.
    W = cached_weights(20, 1.0, 50)
    ctx = W.ctx
    with ctx.scope():
        f = [numerics.exp(x * x) for x in W.nodes.points]
        interp = quadrature.fit_interpolant(W, f)
        rep = max(abs(interp(x) - f[j]) for j, x in enumerate(W.nodes.points))
        slack = (
            W.condition_estimate
            * ctx.power_of_ten(2 - ctx.decimal_digits)
            * max(abs(v) for v in f)
        )
        out.append(_check("interpolation reproduction at nodes", rep, slack))
    # Initial conditions hold exactly / to Newton tolerance.
    sol = cached_solution("ex7", N=35, digits=60)
    ctx = sol.ctx
    with ctx.scope():
        exact_ic = sol.nodal_values[0] == ctx.num(1)
        d_ic = abs(
            sum(
                sol.weights.w1.entry(0, j) * sol.nodal_values[j]
                for j in range(sol.nodes.n_points)
            )
        )
        tol = ctx.power_of_ten(10 - ctx.decimal_digits)
    out.append(("ex7 value IC imposed exactly", exact_ic, "f(0) == 1"))
    out.append(_check("ex7 derivative IC", d_ic, tol))
    solz = cached_solution("ex6", N=35, digits=60)
    out.append(
        (
            "ex6 transformed value IC imposed exactly",
            solz.nodal_values[0] == 0,
            "z(0) == 0",
        )
    )
    # Residual of the closed-form solutions sampled at the nodes. On the
    # unit-domain problems this vanishes to solver accuracy; on the decade
    # domains it sits at the discretization level of the derivative rules
    # (bounds frozen from measured values with a 10x margin).
    for name, n, digits, bound in (
        ("standard:m=1", 30, 50, 1e-8),
        ("ex7", 35, 60, 1e-8),
        ("ex6", 35, 60, 1e-8),
        ("ex5", 40, 60, 0.05),
        ("ex8", 45, 50, 7.7),
        ("ex9", 45, 50, 0.5),
    ):
        p = problems.problem_by_name(name)
        ctx = PrecisionContext(digits)
        with ctx.scope():
            L = ctx.num(3.2) if name == "standard:m=1" else ctx.num(p.default_L)
            nodes = quadrature.make_nodes(n, L, ctx)
            W = quadrature.build_weights(Kernel(GAUSSIAN, 1), nodes, ctx)
            if p.transform == problems.LOG_SUBSTITUTION:
                f = [numerics.log(p.reference(x)) for x in nodes.points]
            else:
                f = [p.reference(x) for x in nodes.points]
            res = problems.assemble_residual(p, W, nodes, f, ctx)
            out.append(
                _check(
                    f"{name} residual at exact samples",
                    max(abs(v) for v in res),
                    ctx.num(bound),
                )
            )
    # Oracle cross-validation: the RK integrator against the closed forms.
    ctx = PrecisionContext(30)
    for m in (0, 1, 5):
        p = problems.standard_problem(m)
        x_end = 5.0 if m == 5 else p.default_L
        xs = [x_end * f / 8 for f in range(1, 9)]
        curve = oracles.rk_reference(p, x_end, 1e-12, ctx, sample_at=xs)
        with ctx.scope():
            err = max(
                abs(y - oracles.exact_standard(m, x, ctx)) for x, y in curve.samples
            )
        out.append(_check(f"RK oracle vs closed form m={m}", err, ctx.num("1e-10")))
    return out


def criterion_7():
    """Convergence ordering for ex7 across N = 10, 20, 30 at digits=60."""
    errs = []
    p = problems.problem_by_name("ex7")
    for n in (10, 20, 30):
        sol = cached_solution("ex7", N=n, digits=60)
        errs.append(_max_nodal_error(sol, p.reference))
    ok = errs[0] > errs[1] > errs[2]
    detail = " > ".join(f"{_f(e):.3e}" for e in errs)
    return [("ex7 max nodal error strictly decreases N=10,20,30", bool(ok), detail)]


CRITERIA = (
    ("criterion-1", "exact-solution closed loop (m=1)", criterion_1),
    ("criterion-2", "first zeros vs Horedt (Table 2 configuration)", criterion_2),
    ("criterion-3", "pointwise values vs RK oracle", criterion_3),
    ("criterion-4", "isothermal gas sphere", criterion_4),
    ("criterion-5", "closed-form examples at table configurations", criterion_5),
    ("criterion-6", "property suite", criterion_6),
    ("criterion-7", "convergence ordering", criterion_7),
)


def run_all(verbose: bool = False) -> int:
    """Run every criterion; print one PASS/FAIL line each; 0 iff all pass."""
    all_ok = True
    for cid, title, fn in CRITERIA:
        checks = fn()
        ok = all(c[1] for c in checks)
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'} {cid}: {title}")
        if verbose:
            for label, c_ok, detail in checks:
                print(f"    {'ok  ' if c_ok else 'FAIL'} {label}: {detail}")
    return 0 if all_ok else 1
