import numpy as np
import pytest

from ellhyp.gamma import (
    efac_via_gamma,
    egamma,
    gamma_residue_constant,
    gamma_suite,
    inversion_check,
    reflection_pair_check,
    residue_check,
    shift_check,
    symmetry_check,
)
from ellhyp.numerics import DomainError, EllipticContext, PoleError, random_point
from ellhyp.theta import qpochhammer_inf

from conftest import cval


def test_degenerate_nome(ctx):
    assert abs(egamma(0.4, 0.3, 0, ctx) - 1 / qpochhammer_inf(0.4, 0.3, ctx)) < 1e-14
    assert abs(egamma(0.4, 0, 0.3, ctx) - 1 / qpochhammer_inf(0.4, 0.3, ctx)) < 1e-14


def test_oracle_values(ctx, oracles):
    for case in oracles["egamma"]:
        got = egamma(cval(case["x"]), cval(case["p"]), cval(case["q"]), ctx)
        assert abs(got - cval(case["value"])) <= 1e-13 * max(1, abs(got))


def test_pole_and_zero(ctx):
    p, q = ctx.p, ctx.q
    with pytest.raises(PoleError):
        egamma(1, ctx=ctx)
    with pytest.raises(PoleError):
        egamma(1 / (p * q**2), ctx=ctx)
    assert egamma(p * q, ctx=ctx) == 0
    assert egamma(p**2 * q**3, ctx=ctx) == 0
    with pytest.raises(DomainError):
        egamma(0, ctx=ctx)


def test_arrays(ctx):
    xs = np.array([0.5 + 0.2j, 1.3 - 0.1j])
    got = egamma(xs, ctx=ctx)
    for x, g in zip(xs, got):
        assert abs(g - egamma(complex(x), ctx=ctx)) < 1e-14 * abs(g)


def test_functional_equations(ctx, rng):
    for _ in range(10):
        x = random_point(rng, 0.4, 1.4)
        assert inversion_check(x, ctx.with_(tol=1e-10))
        assert shift_check(x, ctx.with_(tol=1e-10), "q")
        assert shift_check(x, ctx.with_(tol=1e-10), "p")
        assert symmetry_check(x, ctx)
        assert reflection_pair_check(x, ctx)


@pytest.mark.parametrize("n", [0, 3, 12])
def test_factorial_quotient(ctx, n):
    res = efac_via_gamma(0.35 + 0.1j, n, ctx)
    assert res.passed and res.scale >= 1


def test_factorial_limit(ctx):
    with pytest.raises(DomainError):
        efac_via_gamma(0.4, 13, ctx)


def test_residue_constant(ctx, oracles):
    assert gamma_residue_constant(0, 0, ctx) == 1
    case = oracles["gamma_residue_constant"][0]
    got = gamma_residue_constant(0.2, 0.3, ctx)
    assert abs(got - cval(case["value"])) < 1e-14
    assert gamma_residue_constant(0.3, 0.2, ctx) == got
    assert residue_check(0.2, 0.3, ctx=ctx)


def test_suite(ctx):
    assert gamma_suite(ctx, draws=8)
