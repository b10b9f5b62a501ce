"""Collocation nodes, RBF interpolation and differential-quadrature weights.

The derivative of a smooth function at node x_i is approximated by a
weighted sum of its values at all nodes; the weight rows are obtained by
requiring the rule to be exact on every kernel basis function, which turns
into one linear system per node against the symmetric interpolation matrix
A[k][j] = phi(|x_j - x_k|). A single LU factorization of A serves all 2N
right-hand sides (first and second derivative order at every node).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels, numerics
from .errors import DimensionMismatch, InvalidGrid
from .kernels import Kernel
from .numerics import DEFAULT_CONTEXT, DenseMatrix, LuFactorization, PrecisionContext


@dataclass(frozen=True)
class NodeSet:
    """Cosine-spaced collocation points on [0, domain_length].

    Points follow x_i = (L/2) * (1 - cos(pi*(i-1)/(N-1))): clustered at both
    ends, symmetric about L/2, with x_1 = 0 and x_N = L exactly.
    """

    n_points: int
    domain_length: object
    points: tuple

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return self.n_points


def cosine_spaced(n: int, length, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """The raw cosine-spaced point formula, for any n >= 2.

    The first and last points are exactly 0 and ``length``, and symmetry
    x_i + x_(n+1-i) = length holds exactly because the upper half is
    mirrored from the lower half.
    """
    with ctx.scope():
        length = ctx.num(length)
        zero = ctx.num(0)
        half = length / 2
        pts = [zero] * n
        pts[n - 1] = length
        for i in range(1, (n + 1) // 2):
            theta = ctx.pi * i / (n - 1)
            x = half * (1 - numerics.cos(theta))
            pts[i] = x
            pts[n - 1 - i] = length - x
        if n % 2 == 1:
            pts[n // 2] = half
        return tuple(pts)


def make_nodes(N: int, L, ctx: PrecisionContext = DEFAULT_CONTEXT) -> NodeSet:
    """Build the N cosine-spaced collocation nodes on [0, L].

    Raises:
        InvalidGrid: If ``N < 4`` or ``L <= 0``.
    """
    if N < 4:
        raise InvalidGrid(f"need at least 4 points, got {N}")
    with ctx.scope():
        L = ctx.num(L)
        if not L > 0:
            raise InvalidGrid(f"domain length must be positive, got {L}")
        return NodeSet(N, L, cosine_spaced(N, L, ctx))


def interpolation_matrix(
    k: Kernel, nodes: NodeSet, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> DenseMatrix:
    """Symmetric matrix of kernel values A[k][j] = phi(|x_j - x_k|)."""
    with ctx.scope():
        pts = nodes.points
        n = len(pts)
        rows = [[None] * n for _ in range(n)]
        diag = kernels.eval(k, pts[0], pts[0])
        for i in range(n):
            rows[i][i] = diag
            for j in range(i + 1, n):
                v = kernels.eval(k, pts[j], pts[i])
                rows[i][j] = v
                rows[j][i] = v
        return DenseMatrix(rows)


class WeightMatrices:
    """First- and second-derivative quadrature weights for a node set.

    Attributes:
        w1, w2: N x N weight matrices; row i gives the weights that turn
            nodal values into the derivative at node i.
        interp_factorization: Shared LU factorization of the interpolation
            matrix (reused to fit interpolants).
        condition_estimate: 1-norm condition estimate of that matrix.
    """

    __slots__ = ("w1", "w2", "interp_factorization", "condition_estimate",
                 "kernel", "nodes", "ctx")

    def __init__(self, w1, w2, interp_factorization, kernel, nodes, ctx):
        self.w1 = w1
        self.w2 = w2
        self.interp_factorization = interp_factorization
        self.condition_estimate = interp_factorization.condition_estimate
        self.kernel = kernel
        self.nodes = nodes
        self.ctx = ctx

    @property
    def n_points(self) -> int:
        return self.nodes.n_points


def build_weights(
    k: Kernel, nodes: NodeSet, ctx: PrecisionContext = DEFAULT_CONTEXT
) -> WeightMatrices:
    """Solve the weight systems for derivative orders 1 and 2 at every node.

    One factorization of the interpolation matrix is shared by all 2N
    right-hand sides.

    Raises:
        SingularMatrix: When the kernel/node configuration is beyond the
            context precision.
    """
    with ctx.scope():
        A = interpolation_matrix(k, nodes, ctx)
        F = numerics.lu_factor(A, ctx)
        pts = nodes.points
        n = len(pts)
        w1_rows = []
        w2_rows = []
        for i in range(n):
            xi = pts[i]
            rhs1 = [kernels.d1(k, xi, pts[kk]) for kk in range(n)]
            rhs2 = [kernels.d2(k, xi, pts[kk]) for kk in range(n)]
            w1_rows.append(numerics.lu_solve(F, rhs1))
            w2_rows.append(numerics.lu_solve(F, rhs2))
        return WeightMatrices(
            DenseMatrix(w1_rows), DenseMatrix(w2_rows), F, k, nodes, ctx
        )


@dataclass(frozen=True)
class Interpolant:
    """RBF expansion f(x) = sum_k coefficients[k] * phi(|x - x_k|)."""

    coefficients: tuple
    kernel: Kernel
    nodes: NodeSet

    def __call__(self, x):
        return eval_interpolant(self, x)

    def derivative(self, x, order: int = 1):
        """Derivative of the expansion at ``x`` (order 1 or 2)."""
        if order == 1:
            term = kernels.d1
        elif order == 2:
            term = kernels.d2
        else:
            raise ValueError("derivative order must be 1 or 2")
        pts = self.nodes.points
        return sum(
            self.coefficients[k] * term(self.kernel, x, pts[k])
            for k in range(len(pts))
        )

    def diagnose(self, x) -> tuple:
        """Evaluate at ``x`` and report whether this extrapolates.

        Returns:
            (value, extrapolated) where ``extrapolated`` is True when x lies
            outside [0, domain_length].
        """
        value = eval_interpolant(self, x)
        extrapolated = x < 0 or x > self.nodes.domain_length
        return value, bool(extrapolated)


def fit_interpolant(W: WeightMatrices, nodal_values: Sequence) -> Interpolant:
    """Coefficients of the RBF expansion through the given nodal values.

    Raises:
        DimensionMismatch: If the value vector length differs from N.
    """
    if len(nodal_values) != W.n_points:
        raise DimensionMismatch(
            f"{W.n_points} nodes but {len(nodal_values)} values"
        )
    with W.ctx.scope():
        lam = numerics.lu_solve(W.interp_factorization, list(nodal_values))
        return Interpolant(lam, W.kernel, W.nodes)


def eval_interpolant(p: Interpolant, x):
    """Value of the expansion at ``x`` (extrapolation permitted)."""
    pts = p.nodes.points
    return sum(
        p.coefficients[k] * kernels.eval(p.kernel, x, pts[k])
        for k in range(len(pts))
    )
