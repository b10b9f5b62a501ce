"""Kernel values and closed-form derivatives against finite differences."""

import random

import pytest
from mpmath import mp

import emden_dq.kernels as kernels
from emden_dq import (
    GAUSSIAN,
    INVERSE_MULTIQUADRIC,
    INVERSE_QUADRIC,
    MULTIQUADRIC,
    Kernel,
    PrecisionContext,
)

FAMILIES = (GAUSSIAN, MULTIQUADRIC, INVERSE_MULTIQUADRIC, INVERSE_QUADRIC)


def test_gaussian_center_value_is_one():
    for c in (0.5, 1, 3):
        k = Kernel(GAUSSIAN, c)
        assert kernels.eval(k, 0.7, 0.7) == 1


def test_gaussian_unit_distance(ctx50):
    k = Kernel(GAUSSIAN, 1)
    with ctx50.scope():
        v = kernels.eval(k, ctx50.num(1), ctx50.num(0))
        assert abs(v - mp.exp(-1)) <= ctx50.num("1e-49")


def test_multiquadric_at_center():
    k = Kernel(MULTIQUADRIC, 2)
    assert kernels.eval(k, 5.0, 5.0) == 2


def test_inverse_families_at_center():
    assert kernels.eval(Kernel(INVERSE_MULTIQUADRIC, 2), 0.0, 0.0) == 0.5
    assert kernels.eval(Kernel(INVERSE_QUADRIC, 2), 0.0, 0.0) == 0.25


def test_d1_vanishes_at_center():
    for fam in FAMILIES:
        assert kernels.d1(Kernel(fam, 1.5), 2.0, 2.0) == 0


def test_gaussian_d1_d2_closed_values(ctx50):
    k = Kernel(GAUSSIAN, 1)
    with ctx50.scope():
        e1 = mp.exp(-1)
        assert abs(kernels.d1(k, ctx50.num(1), ctx50.num(0)) + 2 * e1) <= ctx50.num("1e-49")
        assert kernels.d2(k, ctx50.num(0), ctx50.num(0)) == -2
        assert abs(kernels.d2(k, ctx50.num(1), ctx50.num(0)) - 2 * e1) <= ctx50.num("1e-49")


def test_shape_parameter_must_be_positive():
    with pytest.raises(ValueError):
        Kernel(GAUSSIAN, 0)
    with pytest.raises(ValueError):
        Kernel(GAUSSIAN, -1)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        Kernel("spline", 1)


def test_family_aliases():
    assert Kernel("GA", 1).family == GAUSSIAN
    assert Kernel("mq", 1).family == MULTIQUADRIC
    assert Kernel("IMQ", 1).family == INVERSE_MULTIQUADRIC
    assert Kernel("iq", 1).family == INVERSE_QUADRIC


@pytest.mark.parametrize("family", FAMILIES)
def test_derivatives_match_finite_differences(family, ctx50):
    """100 random (x, center, c) triples per family against central FD."""
    rng = random.Random(hash(family) & 0xFFFF)
    k_tol = ctx50.num("1e-15")
    with ctx50.scope():
        h1 = ctx50.num("1e-20")
        h2 = ctx50.num("1e-12")
        for _ in range(100):
            c = ctx50.num(rng.randint(2, 40)) / 10
            k = Kernel(family, c)
            x = ctx50.num(rng.randint(-300, 300)) / 100
            ce = ctx50.num(rng.randint(-300, 300)) / 100
            fd1 = (kernels.eval(k, x + h1, ce) - kernels.eval(k, x - h1, ce)) / (2 * h1)
            d1 = kernels.d1(k, x, ce)
            scale = max(abs(d1), ctx50.num(1))
            assert abs(d1 - fd1) <= k_tol * scale
            fd2 = (
                kernels.eval(k, x + h2, ce)
                - 2 * kernels.eval(k, x, ce)
                + kernels.eval(k, x - h2, ce)
            ) / (h2 * h2)
            d2 = kernels.d2(k, x, ce)
            scale = max(abs(d2), ctx50.num(1))
            assert abs(d2 - fd2) <= k_tol * scale


@pytest.mark.parametrize("family", FAMILIES)
def test_translation_invariance_and_symmetry(family, ctx50):
    rng = random.Random(123)
    k = Kernel(family, 1.3)
    with ctx50.scope():
        for _ in range(25):
            x = ctx50.num(rng.randint(-200, 200)) / 100
            ce = ctx50.num(rng.randint(-200, 200)) / 100
            s = ctx50.num(rng.randint(-50, 50)) / 10
            lhs = kernels.eval(k, x + s, ce + s)
            rhs = kernels.eval(k, x, ce)
            assert abs(lhs - rhs) <= ctx50.num("1e-46") * max(1, abs(rhs))
            assert kernels.eval(k, x, ce) == kernels.eval(k, ce, x)
            assert kernels.d1(k, x, ce) == -kernels.d1(k, ce, x)


def test_float_mode_evaluation():
    k = Kernel(GAUSSIAN, 1)
    v = kernels.eval(k, 1.0, 0.0)
    assert type(v) is float
    assert abs(v - 0.36787944117144233) < 1e-16
