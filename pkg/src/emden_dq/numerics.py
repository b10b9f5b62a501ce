"""Configurable-precision arithmetic and the generic numerical engines.

This module provides the scalar arithmetic backend (native IEEE doubles or
mpmath software multiprecision, selected through :class:`PrecisionContext`)
together with the three engines everything else is built on:

* dense LU factorization with partial pivoting and a 1-norm condition
  estimate (:func:`lu_factor` / :func:`lu_solve`),
* bracketed root finding (:func:`brent_root`),
* damped Newton iteration for nonlinear systems (:func:`newton_solve`).

All operations are pure and deterministic: identical inputs under an
identical context give bit-identical results.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Sequence

from mpmath import mp

from .errors import (
    DimensionMismatch,
    MaxIterationsExceeded,
    NonFiniteResidual,
    NoSignChange,
    SingularJacobian,
    SingularMatrix,
)

MULTIPRECISION = "software-multiprecision"
NATIVE_DOUBLE = "native-double"

DEFAULT_DIGITS = 50


@dataclass(frozen=True)
class PrecisionContext:
    """Run-scoped working precision for all scalar arithmetic.

    Attributes:
        decimal_digits: Significant decimal digits carried by every scalar
            operation. At least 15. In native-double mode this is pinned to
            16 (the precision IEEE binary64 actually delivers).
        mode: ``"software-multiprecision"`` (mpmath) or ``"native-double"``
            (Python floats).
    """

    decimal_digits: int = DEFAULT_DIGITS
    mode: str = MULTIPRECISION

    def __post_init__(self):
        if self.mode not in (MULTIPRECISION, NATIVE_DOUBLE):
            raise ValueError(f"unknown precision mode {self.mode!r}")
        if self.mode == NATIVE_DOUBLE:
            object.__setattr__(self, "decimal_digits", 16)
        elif self.decimal_digits < 15:
            raise ValueError("decimal_digits must be at least 15")

    @property
    def is_native(self) -> bool:
        return self.mode == NATIVE_DOUBLE

    @contextmanager
    def scope(self):
        """Make this context's precision the active mpmath precision.

        Every public operation in this package enters the scope of the
        context it was handed; nesting is cheap and safe.
        """
        if self.is_native:
            yield self
        else:
            with mp.workdps(self.decimal_digits):
                yield self

    def num(self, value):
        """Convert ``value`` (int, float, str, mpf) to a context scalar."""
        if self.is_native:
            return float(value)
        with mp.workdps(self.decimal_digits):
            return mp.mpf(value)

    def vector(self, values) -> tuple:
        return tuple(self.num(v) for v in values)

    @property
    def pi(self):
        if self.is_native:
            return math.pi
        with mp.workdps(self.decimal_digits):
            return +mp.pi

    @property
    def eps(self):
        """One unit in the last decimal place at scale 1."""
        return self.num(10) ** (1 - self.decimal_digits)

    def power_of_ten(self, exponent: int):
        return self.num(10) ** exponent


DEFAULT_CONTEXT = PrecisionContext()


# ---------------------------------------------------------------------------
# Polymorphic scalar functions.
#
# Scalars are floats in native mode and mpf in multiprecision mode; these
# helpers dispatch on the argument type so problem definitions and kernels
# can be written once. The mp branch assumes the caller entered ctx.scope().
# ---------------------------------------------------------------------------


def _is_float(v) -> bool:
    return type(v) is float


def exp(v):
    if _is_float(v):
        try:
            return math.exp(v)
        except OverflowError:
            return math.inf
    return mp.exp(v)


def log(v):
    return math.log(v) if _is_float(v) else mp.log(v)


def sqrt(v):
    return math.sqrt(v) if _is_float(v) else mp.sqrt(v)


def sin(v):
    return math.sin(v) if _is_float(v) else mp.sin(v)


def cos(v):
    return math.cos(v) if _is_float(v) else mp.cos(v)


def sinh(v):
    if _is_float(v):
        try:
            return math.sinh(v)
        except OverflowError:
            return math.copysign(math.inf, v)
    return mp.sinh(v)


def cosh(v):
    if _is_float(v):
        try:
            return math.cosh(v)
        except OverflowError:
            return math.inf
    return mp.cosh(v)


def isfinite(v) -> bool:
    return math.isfinite(v) if _is_float(v) else mp.isfinite(v)


def sign(v) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def inf_norm(vec) -> object:
    return max(abs(v) for v in vec)


def one_norm(vec) -> object:
    return sum(abs(v) for v in vec)


# ---------------------------------------------------------------------------
# Dense matrices and LU factorization
# ---------------------------------------------------------------------------


class DenseMatrix:
    """Immutable dense matrix of context scalars.

    Storage is an implementation detail; entries are reached through
    :meth:`entry`, :meth:`row` or ``m[i, j]``.
    """

    __slots__ = ("_data", "_rows", "_cols")

    def __init__(self, rows_data):
        data = tuple(tuple(row) for row in rows_data)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows in matrix data")
        self._data = data
        self._rows = len(data)
        self._cols = ncols

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    def entry(self, i: int, j: int):
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def to_lists(self) -> list:
        return [list(r) for r in self._data]

    def matvec(self, vec: Sequence) -> tuple:
        if len(vec) != self._cols:
            raise DimensionMismatch(
                f"matrix has {self._cols} columns, vector has {len(vec)} entries"
            )
        return tuple(
            sum(row[j] * vec[j] for j in range(self._cols)) for row in self._data
        )

    def one_norm(self):
        return max(
            sum(abs(self._data[i][j]) for i in range(self._rows))
            for j in range(self._cols)
        )

    def __eq__(self, other):
        return isinstance(other, DenseMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"DenseMatrix({self._rows}x{self._cols})"

    @staticmethod
    def identity(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "DenseMatrix":
        one, zero = ctx.num(1), ctx.num(0)
        return DenseMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )


class LuFactorization:
    """LU factorization with partial pivoting of a square matrix.

    Attributes:
        factors: Combined L (unit lower, below diagonal) and U factors.
        pivot_permutation: Row permutation applied during elimination.
        condition_estimate: 1-norm condition estimate (Hager's method),
            always >= 1 and typically within a small factor of the truth.
    """

    __slots__ = ("factors", "pivot_permutation", "condition_estimate", "ctx", "_n")

    def __init__(self, factors, pivot_permutation, condition_estimate, ctx):
        self.factors = factors
        self.pivot_permutation = pivot_permutation
        self.condition_estimate = condition_estimate
        self.ctx = ctx
        self._n = factors.rows

    @property
    def order(self) -> int:
        return self._n


def _forward_back_solve(lu_rows, perm, b):
    n = len(perm)
    y = [None] * n
    for i in range(n):
        s = b[perm[i]]
        row = lu_rows[i]
        for j in range(i):
            s -= row[j] * y[j]
        y[i] = s
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = y[i]
        row = lu_rows[i]
        for j in range(i + 1, n):
            s -= row[j] * x[j]
        x[i] = s / row[i]
    return x


def _transpose_solve(lu_rows, perm, b):
    # Solves A^T z = b given P A = L U, i.e. A^T = U^T L^T P.
    n = len(perm)
    v = [None] * n
    for i in range(n):
        s = b[i]
        for j in range(i):
            s -= lu_rows[j][i] * v[j]
        v[i] = s / lu_rows[i][i]
    w = [None] * n
    for i in range(n - 1, -1, -1):
        s = v[i]
        for j in range(i + 1, n):
            s -= lu_rows[j][i] * w[j]
        w[i] = s
    z = [None] * n
    for i in range(n):
        z[perm[i]] = w[i]
    return z


def _hager_inverse_one_norm(lu_rows, perm, ctx):
    """Estimate ||A^-1||_1 from the factorization (Hager 1984)."""
    n = len(perm)
    x = [ctx.num(1) / n] * n
    best = ctx.num(0)
    for _ in range(5):
        y = _forward_back_solve(lu_rows, perm, x)
        est = one_norm(y)
        if est > best:
            best = est
        xi = [ctx.num(1) if v >= 0 else ctx.num(-1) for v in y]
        z = _transpose_solve(lu_rows, perm, xi)
        j_max = max(range(n), key=lambda j: abs(z[j]))
        if abs(z[j_max]) <= sum(z[j] * x[j] for j in range(n)):
            break
        x = [ctx.num(0)] * n
        x[j_max] = ctx.num(1)
    return best


def lu_factor(A: DenseMatrix, ctx: PrecisionContext = DEFAULT_CONTEXT) -> LuFactorization:
    """Factor a square matrix as P A = L U with partial pivoting.

    Args:
        A: Square matrix with finite entries.
        ctx: Working precision.

    Returns:
        The factorization, carrying a 1-norm condition estimate.

    Raises:
        SingularMatrix: If a pivot underflows the context precision.
        DimensionMismatch: If ``A`` is not square.
    """
    if A.rows != A.cols:
        raise DimensionMismatch(f"cannot LU-factor a {A.rows}x{A.cols} matrix")
    with ctx.scope():
        n = A.rows
        M = A.to_lists()
        scale = max(max(abs(v) for v in row) for row in M)
        if scale == 0:
            raise SingularMatrix("zero matrix")
        pivot_floor = scale * ctx.power_of_ten(-(ctx.decimal_digits + 10))
        perm = list(range(n))
        for k in range(n):
            p_row = max(range(k, n), key=lambda i: abs(M[i][k]))
            if abs(M[p_row][k]) <= pivot_floor:
                raise SingularMatrix(
                    f"pivot {k} underflowed working precision "
                    f"({ctx.decimal_digits} digits)"
                )
            if p_row != k:
                M[k], M[p_row] = M[p_row], M[k]
                perm[k], perm[p_row] = perm[p_row], perm[k]
            row_k = M[k]
            pivot = row_k[k]
            for i in range(k + 1, n):
                row_i = M[i]
                mult = row_i[k] / pivot
                row_i[k] = mult
                if mult != 0:
                    for j in range(k + 1, n):
                        row_i[j] -= mult * row_k[j]
        inv_norm = _hager_inverse_one_norm(M, perm, ctx)
        cond = A.one_norm() * inv_norm
        if cond < 1:
            cond = ctx.num(1)
        return LuFactorization(DenseMatrix(M), tuple(perm), cond, ctx)


def lu_solve(F: LuFactorization, b: Sequence) -> tuple:
    """Solve A x = b from a factorization of A.

    Raises:
        DimensionMismatch: If ``b`` does not match the factorization order.
    """
    if len(b) != F.order:
        raise DimensionMismatch(
            f"factorization order {F.order}, right-hand side length {len(b)}"
        )
    with F.ctx.scope():
        lu_rows = [F.factors.row(i) for i in range(F.order)]
        return tuple(_forward_back_solve(lu_rows, F.pivot_permutation, list(b)))


def lu_solve_transpose(F: LuFactorization, b: Sequence) -> tuple:
    """Solve A^T x = b from a factorization of A."""
    if len(b) != F.order:
        raise DimensionMismatch(
            f"factorization order {F.order}, right-hand side length {len(b)}"
        )
    with F.ctx.scope():
        lu_rows = [F.factors.row(i) for i in range(F.order)]
        return tuple(_transpose_solve(lu_rows, F.pivot_permutation, list(b)))


# ---------------------------------------------------------------------------
# Bracketed root finding
# ---------------------------------------------------------------------------


def brent_root(
    g: Callable,
    a,
    b,
    tol,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    max_iter: int = 300,
):
    """Find a root of ``g`` in [a, b] by Brent's method.

    Stops when ``|g(x)| <= tol`` or the bracket width falls below ``tol``.
    The returned point always lies inside the initial bracket.

    Raises:
        NoSignChange: If ``g(a)`` and ``g(b)`` do not have opposite signs.
    """
    with ctx.scope():
        a, b, tol = ctx.num(a), ctx.num(b), ctx.num(tol)
        fa, fb = g(a), g(b)
        if fa == 0:
            return a
        if fb == 0:
            return b
        if sign(fa) == sign(fb):
            raise NoSignChange(f"g({a}) and g({b}) have the same sign")
        c, fc = a, fa
        d = e = b - a
        machine = ctx.eps
        for _ in range(max_iter):
            if sign(fb) == sign(fc):
                c, fc = a, fa
                d = e = b - a
            if abs(fc) < abs(fb):
                a, b, c = b, c, b
                fa, fb, fc = fb, fc, fb
            tol1 = 2 * machine * abs(b) + tol / 2
            xm = (c - b) / 2
            if abs(xm) <= tol1 or fb == 0 or abs(fb) <= tol:
                return b
            if abs(e) >= tol1 and abs(fa) > abs(fb):
                s = fb / fa
                if a == c:
                    p = 2 * xm * s
                    q = 1 - s
                else:
                    q = fa / fc
                    r = fb / fc
                    p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1))
                    q = (q - 1) * (r - 1) * (s - 1)
                if p > 0:
                    q = -q
                p = abs(p)
                if 2 * p < min(3 * xm * q - abs(tol1 * q), abs(e * q)):
                    e = d
                    d = p / q
                else:
                    d = xm
                    e = d
            else:
                d = xm
                e = d
            a, fa = b, fb
            if abs(d) > tol1:
                b += d
            else:
                b += tol1 if xm > 0 else -tol1
            fb = g(b)
        return b


# ---------------------------------------------------------------------------
# Damped Newton iteration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonResult:
    """Converged iterate with diagnostics."""

    x: tuple
    iterations: int
    residual_norm: object


def fd_jacobian(residual, x, r0, ctx):
    """Forward finite-difference Jacobian of ``residual`` at ``x``.

    Step per unknown: ``10^(-digits/2) * max(1, |x_i|)``. Handles
    rectangular systems (more residual rows than unknowns).
    """
    n = len(x)
    m = len(r0)
    step_scale = ctx.power_of_ten(-(ctx.decimal_digits // 2))
    cols = []
    for i in range(n):
        h = step_scale * max(ctx.num(1), abs(x[i]))
        xp = list(x)
        xp[i] = xp[i] + h
        ri = residual(tuple(xp))
        cols.append([(ri[k] - r0[k]) / h for k in range(m)])
    return DenseMatrix([[cols[j][i] for j in range(n)] for i in range(m)])


def newton_solve(
    residual: Callable,
    x0: Sequence,
    jacobian: Callable | None = None,
    tol=None,
    max_iter: int = 100,
    damping: str = "backtracking",
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    max_backtracks: int = 20,
) -> NewtonResult:
    """Solve R(x) = 0 by Newton's method with optional backtracking.

    Args:
        residual: Maps an n-vector to an n-vector of residuals.
        x0: Starting iterate.
        jacobian: Callable returning the Jacobian as a DenseMatrix at a
            point. When omitted, a forward finite-difference Jacobian with
            step ``10^(-digits/2) * max(1, |x_i|)`` is used.
        tol: Convergence threshold on the residual infinity norm; defaults
            to ``10^(10 - decimal_digits)``.
        max_iter: Iteration cap.
        damping: ``"backtracking"`` (halve the step until the residual norm
            decreases, up to ``max_backtracks`` times) or ``"none"``.
        ctx: Working precision.

    Returns:
        NewtonResult with the solution, iteration count and final norm.

    Raises:
        MaxIterationsExceeded: On stall or running out of iterations;
            carries the best iterate and its residual norm.
        SingularJacobian: If the Jacobian cannot be factorized.
    """
    if damping not in ("backtracking", "none"):
        raise ValueError(f"unknown damping mode {damping!r}")
    with ctx.scope():
        if tol is None:
            tol = ctx.power_of_ten(10 - ctx.decimal_digits)
        else:
            tol = ctx.num(tol)
        x = ctx.vector(x0)
        r = residual(x)
        if len(r) != len(x):
            raise DimensionMismatch("residual dimension differs from iterate")
        norm = inf_norm(r)
        for iteration in range(max_iter + 1):
            if isfinite(norm) and norm <= tol:
                return NewtonResult(x, iteration, norm)
            if iteration == max_iter:
                break
            J = jacobian(x) if jacobian is not None else fd_jacobian(residual, x, r, ctx)
            try:
                F = lu_factor(J, ctx)
            except SingularMatrix as err:
                raise SingularJacobian(
                    f"Jacobian singular at iteration {iteration}: {err}"
                ) from err
            delta = lu_solve(F, [-v for v in r])
            lam = ctx.num(1)
            accepted = False
            for _ in range(max_backtracks + 1):
                trial = tuple(x[i] + lam * delta[i] for i in range(len(x)))
                try:
                    r_trial = residual(trial)
                    norm_trial = inf_norm(r_trial)
                    ok = all(isfinite(v) for v in r_trial)
                except (ValueError, ZeroDivisionError, OverflowError, NonFiniteResidual):
                    ok = False
                if ok and (norm_trial < norm or damping == "none"):
                    x, r, norm = trial, r_trial, norm_trial
                    accepted = True
                    break
                if damping == "none":
                    break
                lam /= 2
            if not accepted:
                raise MaxIterationsExceeded(
                    f"Newton stalled at iteration {iteration} "
                    f"(residual norm {norm})",
                    best_x=x,
                    residual_norm=norm,
                    iterations=iteration,
                )
        raise MaxIterationsExceeded(
            f"no convergence in {max_iter} iterations (residual norm {norm})",
            best_x=x,
            residual_norm=norm,
            iterations=max_iter,
        )
