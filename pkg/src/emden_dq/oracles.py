"""Independent reference solutions for the benchmark problems.

Three kinds of references back the accuracy tables and the test suite:

* closed forms where they exist (:func:`exact_standard` and the per-problem
  ``reference`` callables),
* the truncated decomposition series published for the isothermal, sinh and
  sin problems (:func:`adm_series`), valid near the origin,
* a high-accuracy adaptive Runge-Kutta integrator (Cash-Karp 5(4)) started
  a tiny step away from the singular origin with a Taylor expansion
  (:func:`rk_reference`), which is the baseline wherever no closed form is
  known.

The integrator is validated against the closed forms before anything else
is trusted; it shares no code path with the collocation solver.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from . import numerics
from .errors import StiffnessFailure, UnsupportedM
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .problems import Problem, standard_problem

CLOSED_FORM = "closed-form"
ADM_SERIES = "adm-series"
RK_ADAPTIVE = "rk-adaptive"


def exact_standard(m, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Closed-form standard-equation solution for m in {0, 1, 5}.

    Raises:
        UnsupportedM: For any other index (no closed form exists).
    """
    m = float(m)
    with ctx.scope():
        x = ctx.num(x)
        if m == 0.0:
            return 1 - x * x / 6
        if m == 1.0:
            if x == 0:
                return ctx.num(1)
            return numerics.sin(x) / x
        if m == 5.0:
            return 1 / numerics.sqrt(1 + x * x / 3)
    raise UnsupportedM(f"no closed form for m={m:g}; only 0, 1 and 5")


def adm_series(example: str, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Truncated decomposition series for the three classic problems.

    Evaluates the published truncations exactly as printed (isothermal and
    sin through x^10, sinh through x^8) in Horner form with exact rational
    coefficients. Truncation error grows quickly beyond x ~ 1.5 and is the
    caller's concern.
    """
    with ctx.scope():
        t = ctx.num(x) ** 2
        one = ctx.num(1)
        if example == "isothermal":
            coeffs = [
                -one / 6,
                one / 120,
                -one * 8 / 15120,
                one * 122 / 3265920,
                -one * 4087 / 1796256000,
            ]
            acc = ctx.num(0)
            for c in reversed(coeffs):
                acc = c + t * acc
            return t * acc
        if example == "sinh":
            e1 = numerics.exp(one)
            e2, e3, e4 = e1 * e1, e1 ** 3, e1 ** 4
            e6, e8 = e2 ** 3, e4 ** 2
            coeffs = [
                one,
                -(e2 - 1) / (12 * e1),
                (e4 - 1) / (480 * e2),
                -(2 * e6 + 3 * e2 - 3 * e4 - 2) / (30240 * e3),
                (61 * e8 - 10 * e6 + 10 * e2 - 61) / (26127360 * e4),
            ]
            acc = ctx.num(0)
            for c in reversed(coeffs):
                acc = c + t * acc
            return acc
        if example == "sin":
            k = numerics.sin(one)
            l = numerics.cos(one)
            k2, l2 = k * k, l * l
            coeffs = [
                one,
                -k / 6,
                k * l / 120,
                k * (k2 / 3024 - l2 / 5040),
                k * l * (-113 * k2 / 3265920 + l2 / 362880),
                k * (
                    1781 * k2 * l2 / 898128000
                    - l2 * l2 / 399168000
                    - 19 * k2 * k2 / 2395080
                ),
            ]
            acc = ctx.num(0)
            for c in reversed(coeffs):
                acc = c + t * acc
            return acc
    raise ValueError(f"no series for {example!r}; use isothermal, sinh or sin")


# ---------------------------------------------------------------------------
# Adaptive Cash-Karp 5(4) integration
# ---------------------------------------------------------------------------

# Butcher tableau as exact rationals (numerator, denominator).
_CK_A = (
    ((1, 5),),
    ((3, 40), (9, 40)),
    ((3, 10), (-9, 10), (6, 5)),
    ((-11, 54), (5, 2), (-70, 27), (35, 27)),
    ((1631, 55296), (175, 512), (575, 13824), (44275, 110592), (253, 4096)),
)
_CK_B5 = ((37, 378), (0, 1), (250, 621), (125, 594), (0, 1), (512, 1771))
_CK_B4 = ((2825, 27648), (0, 1), (18575, 48384), (13525, 55296), (277, 14336), (1, 4))


def _rationals(pairs, ctx):
    return tuple(ctx.num(p) / q for p, q in pairs)


@dataclass(frozen=True)
class ReferenceCurve:
    """Reference solution sampled along the integration path.

    Attributes:
        samples: (x, y) pairs at the requested sample points (or at every
            accepted step when none were requested).
        method: How the curve was produced.
        accuracy_claim: Estimated absolute error bound for the curve.
    """

    samples: tuple
    method: str
    accuracy_claim: object
    problem: Problem = field(repr=False, default=None)
    _states: tuple = field(repr=False, default=())
    _ctx: PrecisionContext = field(repr=False, default=None)
    _rel_tol: object = field(repr=False, default=None)
    _start: tuple = field(repr=False, default=None)

    def eval(self, x):
        """Value at an arbitrary point within the integrated range.

        Re-integrates from the nearest stored state to the left of ``x``
        (at most one step away), so the result carries the stepper's own
        accuracy rather than an interpolation error.
        """
        ctx = self._ctx
        with ctx.scope():
            x = ctx.num(x)
            eps, A, C = self._start
            if x <= eps:
                return A + C * x * x
            xs = [s[0] for s in self._states]
            idx = bisect_right(xs, x) - 1
            if idx < 0:
                raise ValueError(f"{x} precedes the integration start")
            x0, y0, v0 = self._states[idx]
            if x0 == x:
                return y0
            rhs = _make_rhs(self.problem)
            states, _ = _integrate(
                rhs, (x0, y0, v0), x, self._rel_tol, ctx, land_on=(x,)
            )
            return states[-1][1]

    def derivative(self, x):
        """First-derivative value at ``x`` (same scheme as :meth:`eval`)."""
        ctx = self._ctx
        with ctx.scope():
            x = ctx.num(x)
            eps, A, C = self._start
            if x <= eps:
                return 2 * C * x
            xs = [s[0] for s in self._states]
            idx = bisect_right(xs, x) - 1
            x0, y0, v0 = self._states[idx]
            if x0 == x:
                return v0
            rhs = _make_rhs(self.problem)
            states, _ = _integrate(
                rhs, (x0, y0, v0), x, self._rel_tol, ctx, land_on=(x,)
            )
            return states[-1][2]

    def csv_text(self) -> str:
        """The samples as CSV with columns x, y, accuracy_claim."""
        ctx = self._ctx or DEFAULT_CONTEXT
        digits = ctx.decimal_digits
        lines = ["x,y,accuracy_claim"]
        claim = _fmt(self.accuracy_claim, digits)
        for x, y in self.samples:
            lines.append(f"{_fmt(x, digits)},{_fmt(y, digits)},{claim}")
        return "\n".join(lines) + "\n"


def _fmt(v, digits):
    from mpmath import mp, nstr

    with mp.workdps(digits):
        return nstr(mp.mpf(v), digits, strip_zeros=True)


def _make_rhs(p: Problem):
    alpha = p.alpha
    f = p.nonlinearity
    h = p.forcing

    def rhs(x, y, v):
        hx = h(x) if h is not None else 0
        return hx - f(x, y) - alpha * v / x

    return rhs


def _integrate(rhs, state, x_end, rel_tol, ctx, land_on=(), stop_on_sign_change=False):
    """March the two-dimensional first-order system from ``state`` to x_end.

    Returns (accepted_states, sign_change_bracket) where the bracket is a
    pair of consecutive accepted states with opposite solution signs (or
    None). Steps are clipped so every point in ``land_on`` is hit exactly.
    """
    a_rows = [_rationals(r, ctx) for r in _CK_A]
    b5 = _rationals(_CK_B5, ctx)
    b4 = _rationals(_CK_B4, ctx)
    x, y, v = state
    x_end = ctx.num(x_end)
    stops = sorted({ctx.num(s) for s in land_on if x < ctx.num(s) <= x_end} | {x_end})
    states = [(x, y, v)]
    h_floor = ctx.power_of_ten(-ctx.decimal_digits + 5) * abs(x_end - x)
    tol = ctx.num(rel_tol)
    h = abs(x_end - x) / 100
    bracket = None
    max_steps = 400000
    steps = 0
    stop_i = 0
    while stop_i < len(stops):
        target = stops[stop_i]
        while x < target:
            steps += 1
            if steps > max_steps:
                raise StiffnessFailure(
                    f"step budget exhausted near x={float(x):.6g}"
                )
            if h < h_floor:
                raise StiffnessFailure(
                    f"step size underflow near x={float(x):.6g}; "
                    "loosen rel_tol or shorten the domain"
                )
            clipped = min(h, target - x)
            ky = []
            kv = []
            ok = True
            try:
                ky.append(v)
                kv.append(rhs(x, y, v))
                for irow, row in enumerate(a_rows):
                    xi = x + clipped * sum(row)
                    yi = y + clipped * sum(row[j] * ky[j] for j in range(len(row)))
                    vi = v + clipped * sum(row[j] * kv[j] for j in range(len(row)))
                    ky.append(vi)
                    kv.append(rhs(xi, yi, vi))
                y5 = y + clipped * sum(b5[j] * ky[j] for j in range(6))
                v5 = v + clipped * sum(b5[j] * kv[j] for j in range(6))
                y4 = y + clipped * sum(b4[j] * ky[j] for j in range(6))
                v4 = v + clipped * sum(b4[j] * kv[j] for j in range(6))
                for val in (y5, v5):
                    if not numerics.isfinite(val):
                        ok = False
            except (ValueError, OverflowError, ZeroDivisionError):
                ok = False
            if not ok:
                h = clipped / 4
                continue
            scale_y = tol + tol * abs(y5)
            scale_v = tol + tol * abs(v5)
            err = max(abs(y5 - y4) / scale_y, abs(v5 - v4) / scale_v)
            if err <= 1:
                prev_y = y
                x, y, v = x + clipped, y5, v5
                states.append((x, y, v))
                if (
                    stop_on_sign_change
                    and bracket is None
                    and numerics.sign(prev_y) * numerics.sign(y) < 0
                ):
                    bracket = (states[-2], states[-1])
                    return states, bracket
            if err == 0:
                factor = ctx.num(5)
            else:
                factor = ctx.num("0.9") * err ** ctx.num("-0.2")
                factor = min(ctx.num(5), max(ctx.num("0.2"), factor))
            h = clipped * factor
        stop_i += 1
    return states, bracket


def rk_reference(
    p: Problem,
    x_end,
    rel_tol,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    sample_at=(),
    stop_on_sign_change: bool = False,
) -> ReferenceCurve:
    """Integrate a problem to ``x_end`` with an embedded Cash-Karp 5(4) pair.

    The singular origin is left via the two-term Taylor start
    ``y(eps) = A + C*eps^2``, ``y'(eps) = 2*C*eps`` with
    ``C = (h(0) - f(0, A)) / (2*(1 + alpha))`` and ``eps = 10^(-digits/3)``,
    whose truncation error is below working precision.

    The run is repeated at a tighter tolerance; the returned curve keeps the
    tighter states, and ``accuracy_claim`` is the largest deviation between
    the two runs (an upper bound on the kept curve's error).

    Args:
        p: Problem to integrate.
        x_end: Right end of the integration.
        rel_tol: Requested relative tolerance; must be at least
            ``10^(-digits + 5)``.
        sample_at: Points to land on exactly and record in ``samples``.
        stop_on_sign_change: Stop once the solution changes sign (used by
            the first-zero search).

    Raises:
        StiffnessFailure: On step-size underflow.
    """
    with ctx.scope():
        tol = ctx.num(rel_tol)
        if tol < ctx.power_of_ten(-ctx.decimal_digits + 5):
            raise ValueError(
                f"rel_tol={rel_tol} is below what {ctx.decimal_digits} digits support"
            )
        A = ctx.num(p.y0)
        h0 = p.forcing(ctx.num(0)) if p.forcing is not None else 0
        C = (h0 - p.nonlinearity(ctx.num(0), A)) / (2 * (1 + p.alpha))
        eps = ctx.power_of_ten(-(ctx.decimal_digits // 3))
        start = (eps, A + C * eps * eps, 2 * C * eps)
        rhs = _make_rhs(p)
        fine_tol = max(tol * ctx.power_of_ten(-4), ctx.power_of_ten(-ctx.decimal_digits + 5))
        coarse_states, _ = _integrate(
            rhs, start, x_end, tol, ctx,
            land_on=sample_at, stop_on_sign_change=stop_on_sign_change,
        )
        fine_states, bracket = _integrate(
            rhs, start, x_end, fine_tol, ctx,
            land_on=tuple(sample_at) + tuple(s[0] for s in coarse_states),
            stop_on_sign_change=stop_on_sign_change,
        )
        fine_at = {s[0]: s[1] for s in fine_states}
        claim = ctx.num(0)
        for x, y, _ in coarse_states:
            if x in fine_at:
                dev = abs(y - fine_at[x])
                if dev > claim:
                    claim = dev
        floor = fine_tol * max(ctx.num(1), max(abs(s[1]) for s in fine_states))
        if claim < floor:
            claim = floor
        curve = ReferenceCurve(
            samples=(),
            method=RK_ADAPTIVE,
            accuracy_claim=claim,
            problem=p,
            _states=tuple(fine_states),
            _ctx=ctx,
            _rel_tol=fine_tol,
            _start=(eps, A, C),
        )
        if sample_at:
            samples = tuple((ctx.num(s), curve.eval(s)) for s in sample_at)
        else:
            samples = tuple((s[0], s[1]) for s in fine_states)
        object.__setattr__(curve, "samples", samples)
        return curve


def first_zero_reference(m, rel_tol, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """First root of the standard equation by integration plus Brent.

    Integrates past the first sign change and refines the root on the
    integrator's own evaluator. Valid for 0 <= m < 5 (the m = 5 solution
    never crosses zero).
    """
    m = float(m)
    if not 0 <= m < 5:
        raise UnsupportedM(f"first zero exists only for 0 <= m < 5, got {m:g}")
    with ctx.scope():
        p = standard_problem(m)
        guess = 1.25 * p.default_L
        curve = rk_reference(
            p, guess, rel_tol, ctx, stop_on_sign_change=True
        )
        lo = hi = None
        prev = None
        for x, y, _ in curve._states:
            if prev is not None and numerics.sign(prev[1]) * numerics.sign(y) < 0:
                lo, hi = prev[0], x
                break
            prev = (x, y)
        if lo is None:
            raise StiffnessFailure(
                f"no sign change found up to x={float(guess):.4g} for m={m:g}"
            )
        tol = max(ctx.num(rel_tol) / 100, ctx.power_of_ten(-ctx.decimal_digits + 6))
        return numerics.brent_root(curve.eval, lo, hi, tol, ctx)
