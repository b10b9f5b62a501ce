"""Precision contexts, LU with condition estimates, Brent, damped Newton."""

import random

import pytest
from mpmath import mp, mpf

import emden_dq.numerics as nm
from emden_dq import (
    DenseMatrix,
    MaxIterationsExceeded,
    NoSignChange,
    PrecisionContext,
    SingularJacobian,
    SingularMatrix,
    brent_root,
    lu_factor,
    lu_solve,
    newton_solve,
)
from emden_dq.errors import DimensionMismatch
from emden_dq.numerics import NATIVE_DOUBLE


class TestPrecisionContext:
    def test_minimum_digits(self):
        with pytest.raises(ValueError):
            PrecisionContext(10)

    def test_native_mode_reports_double_digits(self):
        ctx = PrecisionContext(80, mode=NATIVE_DOUBLE)
        assert ctx.decimal_digits == 16
        assert type(ctx.num("0.1")) is float

    def test_num_parses_decimal_strings(self, ctx50):
        with ctx50.scope():
            v = ctx50.num("0.1")
            assert abs(v - mpf(1) / 10) < ctx50.power_of_ten(-48)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            PrecisionContext(50, mode="quad")


class TestDenseMatrix:
    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatch):
            DenseMatrix([[1, 2], [3]])

    def test_accessors(self):
        m = DenseMatrix([[1, 2], [3, 4]])
        assert m.rows == m.cols == 2
        assert m.entry(1, 0) == 3
        assert m[0, 1] == 2
        assert m.column(1) == (2, 4)

    def test_matvec_dimension_check(self):
        m = DenseMatrix([[1, 2], [3, 4]])
        with pytest.raises(DimensionMismatch):
            m.matvec([1, 2, 3])

    def test_one_norm_is_max_column_sum(self):
        m = DenseMatrix([[1, -5], [2, 1]])
        assert m.one_norm() == 6


class TestLu:
    def test_identity_condition_is_one(self, ctx50):
        F = lu_factor(DenseMatrix.identity(3, ctx50), ctx50)
        assert F.condition_estimate == 1

    def test_diagonal_condition(self, ctx50):
        F = lu_factor(DenseMatrix([[ctx50.num(2), ctx50.num(0)],
                                   [ctx50.num(0), ctx50.num(4)]]), ctx50)
        assert F.condition_estimate == 2

    def test_identity_solve(self, ctx50):
        F = lu_factor(DenseMatrix.identity(3, ctx50), ctx50)
        assert lu_solve(F, ctx50.vector([1, 2, 3])) == ctx50.vector([1, 2, 3])

    def test_diagonal_solve(self, ctx50):
        F = lu_factor(DenseMatrix([[ctx50.num(2), ctx50.num(0)],
                                   [ctx50.num(0), ctx50.num(4)]]), ctx50)
        x = lu_solve(F, ctx50.vector([2, 8]))
        assert x == ctx50.vector([1, 2])

    def test_zero_matrix_singular(self, ctx50):
        with pytest.raises(SingularMatrix):
            lu_factor(DenseMatrix([[ctx50.num(0)] * 2] * 2), ctx50)

    def test_duplicate_rows_singular(self, ctx50):
        m = DenseMatrix([[ctx50.num(1), ctx50.num(2)],
                         [ctx50.num(1), ctx50.num(2)]])
        with pytest.raises(SingularMatrix):
            lu_factor(m, ctx50)

    def test_non_square_rejected(self, ctx50):
        with pytest.raises(DimensionMismatch):
            lu_factor(DenseMatrix([[1, 2, 3], [4, 5, 6]]), ctx50)

    def test_rhs_length_checked(self, ctx50):
        F = lu_factor(DenseMatrix.identity(2, ctx50), ctx50)
        with pytest.raises(DimensionMismatch):
            lu_solve(F, [1, 2, 3])

    def test_random_8x8_recovers_known_solution(self, ctx50):
        rng = random.Random(20240801)
        with ctx50.scope():
            A = DenseMatrix(
                [[ctx50.num(rng.randint(-50, 50)) / 16 for _ in range(8)]
                 for _ in range(8)]
            )
            x_known = ctx50.vector([rng.randint(-9, 9) for _ in range(8)])
            b = A.matvec(x_known)
            F = lu_factor(A, ctx50)
            x = lu_solve(F, b)
            err = max(abs(x[i] - x_known[i]) for i in range(8))
            assert err <= ctx50.num("1e-45")

    def test_condition_estimate_vs_explicit_inverse(self, ctx50):
        # Gaussian kernel matrix on 10 cosine nodes; the oracle inverts the
        # matrix explicitly with mpmath's own routine.
        from emden_dq import GAUSSIAN, Kernel, interpolation_matrix, make_nodes

        nodes = make_nodes(10, 1, ctx50)
        A = interpolation_matrix(Kernel(GAUSSIAN, 1), nodes, ctx50)
        F = lu_factor(A, ctx50)
        with ctx50.scope():
            M = mp.matrix([[A.entry(i, j) for j in range(10)] for i in range(10)])
            inv = M**-1
            inv_norm = max(
                sum(abs(inv[i, j]) for i in range(10)) for j in range(10)
            )
            true_cond = A.one_norm() * inv_norm
            ratio = F.condition_estimate / true_cond
            assert mpf(1) / 10 <= ratio <= 10

    def test_reconstructs_identity_action(self, ctx50):
        rng = random.Random(7)
        with ctx50.scope():
            A = DenseMatrix(
                [[ctx50.num(rng.randint(-20, 20)) + (ctx50.num(40) if i == j else 0)
                  for j in range(6)] for i in range(6)]
            )
            F = lu_factor(A, ctx50)
            slack = ctx50.power_of_ten(3 - ctx50.decimal_digits)
            for j in range(6):
                e = lu_solve(F, A.column(j))
                for i in range(6):
                    target = 1 if i == j else 0
                    assert abs(e[i] - target) <= slack

    def test_solution_stable_between_30_and_60_digits(self):
        # Same exact-rational system at both precisions.
        rng = random.Random(99)
        entries = [[rng.randint(-30, 30) for _ in range(10)] for _ in range(10)]
        for i in range(10):
            entries[i][i] += 120
        rhs = [rng.randint(-9, 9) for _ in range(10)]
        results = []
        for digits in (30, 60):
            ctx = PrecisionContext(digits)
            with ctx.scope():
                A = DenseMatrix([[ctx.num(v) for v in row] for row in entries])
                results.append(lu_solve(lu_factor(A, ctx), ctx.vector(rhs)))
        ctx = PrecisionContext(60)
        with ctx.scope():
            diff = max(abs(a - b) for a, b in zip(*results))
            assert diff <= ctx.num("1e-25")

    def test_native_mode_solve(self):
        ctx = PrecisionContext(mode=NATIVE_DOUBLE)
        A = DenseMatrix([[2.0, 1.0], [1.0, 3.0]])
        x = lu_solve(lu_factor(A, ctx), (5.0, 10.0))
        assert abs(x[0] - 1.0) < 1e-14 and abs(x[1] - 3.0) < 1e-14


class TestBrent:
    def test_linear(self, ctx50):
        root = brent_root(lambda x: x - 1, 0, 2, 1e-30, ctx50)
        with ctx50.scope():
            assert abs(root - 1) <= ctx50.num("1e-30")

    def test_sin_near_pi(self, ctx50):
        root = brent_root(lambda x: nm.sin(x), 3, 3.3, 1e-30, ctx50)
        with ctx50.scope():
            assert abs(root - ctx50.pi) <= ctx50.num("1e-29")

    def test_no_sign_change(self, ctx50):
        with pytest.raises(NoSignChange):
            brent_root(lambda x: x * x + 1, -1, 1, 1e-10, ctx50)

    @pytest.mark.parametrize("seed", range(8))
    def test_root_stays_in_bracket(self, ctx50, seed):
        rng = random.Random(seed)
        r = ctx50.num(rng.randint(-40, 40)) / 10
        a, b = r - rng.random() * 2 - 0.1, r + rng.random() * 2 + 0.1
        g = lambda x: (x - r) * (1 + (x - r) * (x - r) / 3)
        with ctx50.scope():
            root = brent_root(g, a, b, 1e-35, ctx50)
            assert a <= root <= b
            assert abs(root - r) <= ctx50.num("1e-34")

    def test_endpoint_root(self, ctx50):
        assert brent_root(lambda x: x, 0, 1, 1e-20, ctx50) == 0


class TestNewton:
    def test_scalar_linear_one_step(self, ctx50):
        # Finite-difference Jacobian: one step lands within the FD step
        # accuracy, so a tolerance coarser than that converges in one.
        res = newton_solve(lambda x: (x[0] - 3,), [0], tol=1e-20, ctx=ctx50)
        assert res.iterations == 1
        with ctx50.scope():
            assert abs(res.x[0] - 3) <= ctx50.num("1e-20")

    def test_decoupled_system(self, ctx50):
        res = newton_solve(
            lambda v: (v[0] * v[0] - 1, v[1] - 2), [2, 0], ctx=ctx50
        )
        with ctx50.scope():
            assert abs(res.x[0] - 1) <= ctx50.num("1e-39")
            assert abs(res.x[1] - 2) <= ctx50.num("1e-39")

    def test_linear_system_exactly_one_iteration(self, ctx50):
        def residual(v):
            return (2 * v[0] + v[1] - 4, v[0] + 3 * v[1] - 7)

        # Exact Jacobian: one iteration at full tolerance.
        res = newton_solve(
            residual, [10, -10],
            jacobian=lambda v: DenseMatrix([[2, 1], [1, 3]]), ctx=ctx50,
        )
        assert res.iterations == 1
        # Finite differences: one iteration up to the FD step accuracy.
        res = newton_solve(residual, [10, -10], tol=1e-18, ctx=ctx50)
        assert res.iterations == 1

    def test_already_converged_zero_iterations(self, ctx50):
        res = newton_solve(lambda x: (x[0] - 3,), [3], ctx=ctx50)
        assert res.iterations == 0

    def test_max_iterations_carries_best_iterate(self, ctx50):
        with pytest.raises(MaxIterationsExceeded) as exc:
            newton_solve(
                lambda v: (nm.exp(v[0]) - 20,), [0], max_iter=2, ctx=ctx50
            )
        assert exc.value.best_x is not None
        assert exc.value.residual_norm is not None

    def test_singular_jacobian(self, ctx50):
        with pytest.raises(SingularJacobian):
            newton_solve(
                lambda v: (v[0] * v[0],),
                [1],
                jacobian=lambda v: DenseMatrix([[ctx50.num(0)]]),
                ctx=ctx50,
            )

    def test_damping_none_on_linear(self, ctx50):
        res = newton_solve(
            lambda x: (x[0] - 5,), [1], tol=1e-20, damping="none", ctx=ctx50
        )
        assert res.iterations == 1

    def test_backtracking_rescues_overshoot(self, ctx50):
        # atan-like flat residual needs damping from a far start.
        res = newton_solve(
            lambda v: (v[0] / (1 + v[0] * v[0] / 4) - ctx50.num(1) / 5,),
            [8],
            tol=1e-30,
            ctx=ctx50,
        )
        with ctx50.scope():
            r = res.x[0] / (1 + res.x[0] * res.x[0] / 4) - ctx50.num(1) / 5
            assert abs(r) <= ctx50.num("1e-30")
