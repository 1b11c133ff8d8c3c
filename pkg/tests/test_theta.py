import cmath
import math

import numpy as np
import pytest

from ellhyp.numerics import DomainError, random_points
from ellhyp.theta import (
    product_plan,
    qpochhammer_inf,
    quasi_shift,
    theta,
    theta_multi,
    theta_pm,
    theta_ratio,
    theta_scaled,
    theta_series,
    unscale,
)

from conftest import cval


def test_qpochhammer_trivial(ctx):
    assert qpochhammer_inf(0, 0.5, ctx) == 1
    assert qpochhammer_inf(1, 0.3, ctx) == 0


def test_qpochhammer_oracle(ctx, oracles):
    for case in oracles["qpochhammer_inf"]:
        got = qpochhammer_inf(cval(case["a"]), cval(case["p"]), ctx)
        assert abs(got - cval(case["value"])) < 1e-14


def test_plan_tail_bound(ctx):
    plan = product_plan(0.8 + 0.3j, 0.4, ctx)
    assert plan.tail_bound <= ctx.eps_trunc


def test_theta_degenerate_nome(ctx):
    x = 0.3 + 0.1j
    assert theta(x, 0, ctx) == 1 - x


def test_theta_zero_on_lattice(ctx):
    assert theta(0.2, 0.2, ctx) == 0
    assert theta(1, 0.2, ctx) == 0
    assert theta(0.04, 0.2, ctx) == 0


def test_theta_argument_zero(ctx):
    with pytest.raises(DomainError):
        theta(0, 0.2, ctx)


def test_theta_oracle(ctx, oracles):
    for case in oracles["theta"]:
        got = theta(cval(case["x"]), cval(case["p"]), ctx)
        assert abs(got - cval(case["value"])) <= 1e-13 * max(1, abs(got))


@pytest.mark.parametrize("p", [0.15, 0.1, 0.4, 0.2 + 0.3j, -0.35])
def test_theta_constant(ctx, p):
    s = cmath.sqrt(p)
    assert abs(theta(-1, p, ctx) * theta(s, p, ctx) * theta(-s, p, ctx) - 2) / 2 <= 1e-12


def test_theta_multi(ctx):
    assert theta_multi([], 0.3, ctx) == 1
    s = cmath.sqrt(0.3)
    assert abs(theta_multi([-1, s, -s], 0.3, ctx) - 2) < 1e-12


def test_theta_pm_symmetry(ctx, rng):
    a, x = 0.7 + 0.2j, 1.1 - 0.5j
    assert abs(theta_pm(a, x, ctx.p, ctx) - theta_pm(a, 1 / x, ctx.p, ctx)) < 1e-13


def test_series_matches_product(ctx, rng):
    for p in (0.1, 0.25 + 0.1j, -0.35, 0.6):
        for _ in range(16):
            x = cmath.rect(rng.uniform(0.2, 3), rng.uniform(0, 2 * np.pi))
            a, b = theta(x, p, ctx), theta_series(x, p, ctx)
            assert abs(a - b) <= 1e-12 * max(1, abs(a))


def test_series_examples(ctx):
    assert abs(theta_series(-1, 0.1, ctx) - theta(-1, 0.1, ctx)) < 1e-13
    x = 0.7 * cmath.exp(0.3j)
    assert abs(theta_series(x, 0.25 + 0.1j, ctx) - theta(x, 0.25 + 0.1j, ctx)) < 1e-12
    assert theta_series(0.4, 0, ctx) == 0.6


def test_array_evaluation_matches_scalar(ctx):
    xs = np.array([0.3 + 0.1j, 1.2, -0.8j])
    got = theta(xs, ctx.p, ctx)
    for x, g in zip(xs, got):
        assert abs(g - theta(complex(x), ctx.p, ctx)) < 1e-14


def test_quasi_shift(ctx, rng):
    assert abs(quasi_shift(0.6, 0.2, 0, ctx) - theta(0.6, 0.2, ctx)) < 1e-15
    assert abs(quasi_shift(0.6, 0.2, 1, ctx) - theta(0.12, 0.2, ctx)) < 1e-13
    x = cmath.exp(1j * rng.uniform(0, 2 * np.pi))
    p = ctx.p
    direct = theta(p**-2 * x, p, ctx)
    assert abs(quasi_shift(x, p, -2, ctx) - direct) <= 1e-12 * abs(direct)


def test_inversion(ctx):
    x = 0.4 + 0.9j
    assert abs(theta(1 / x, ctx.p, ctx) + theta(x, ctx.p, ctx) / x) < 1e-13


def test_theta_scaled_matches_direct(ctx, rng):
    for p in (ctx.p, 0.4, -0.35):
        for x in random_points(rng, 20, 1e-4, 1e4):
            m, L = theta_scaled(x, p, ctx)
            direct = theta(x, p, ctx)
            assert abs(m * math.exp(L) - direct) <= 1e-12 * abs(direct)


def test_theta_ratio_beyond_double_range(ctx):
    # each factor is far past the double range at |p| = 0.29, the quotient is near one
    p, x = 0.29, 1e20
    assert not cmath.isfinite(theta(x, p, ctx))
    val = theta_ratio([x], [x * (1 + 1e-7)], p, ctx)
    # d log|theta| / d log|x| is about log|x| / log(1/|p|), roughly 37 here
    assert abs(val - 1) < 1e-4
    for z in (x, 3e25 + 4e25j, 1e-22j):
        assert abs(theta_ratio([p * z], [z], p, ctx) * -z - 1) < 1e-12


def test_theta_ratio_zero_and_pole(ctx):
    assert theta_ratio([ctx.p], [0.5], ctx.p, ctx) == 0
    with pytest.raises(DomainError):
        theta_ratio([0.5], [ctx.p**2], ctx.p, ctx)
    with pytest.raises(DomainError):
        unscale(1.0, 800.0)
