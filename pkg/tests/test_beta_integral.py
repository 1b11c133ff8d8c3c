import cmath

import numpy as np
import pytest

from ellhyp.beta_integral import (
    IntegralSpec,
    biorthogonality_integral,
    continuous_biorthogonality,
    draw_biorthogonality,
    draw_spiridonov,
    elliptic_criterion_check,
    integrate,
    qshift_ratio_check,
    qshift_vwp_check,
    radius_robustness_check,
    residue_series_link,
    spiridonov_eval,
    spiridonov_rhs,
    wp_integrand,
)
from ellhyp.numerics import DegenerateError, DomainError, EllipticContext, random_point, random_points

from conftest import cval

SMALL_P = EllipticContext(p=0.005, q=0.5)


def _spec(ctx, rng):
    t_free = draw_spiridonov(ctx, rng)
    ts = list(t_free) + [ctx.p * ctx.q / np.prod(t_free)]
    return IntegralSpec(ts, ctx.p, ctx.q)


def test_integrand_symmetry_and_finiteness(ctx, rng):
    spec = _spec(ctx, rng)
    x = cmath.exp(1j * rng.uniform(0, 6))
    a, b = wp_integrand(x, spec, ctx), wp_integrand(1 / x, spec, ctx)
    assert np.isfinite(a) and abs(a - b) <= 1e-12 * abs(a)


def test_balancing_flag(ctx, rng):
    spec = _spec(ctx, rng)
    assert spec.m == 5 and spec.balanced
    assert not IntegralSpec([0.5] * 6, ctx.p, ctx.q).balanced


def test_parameter_outside_disk(ctx):
    with pytest.raises(DomainError, match="outside disk"):
        IntegralSpec([0.5, 1.2], ctx.p, ctx.q).validate()


def test_symmetric_real_point(oracles):
    case = oracles["beta_integral"][0]
    ctx = EllipticContext(p=0.05, q=0.05, tol=1e-8)
    t = cval(case["t"][0]).real
    res = spiridonov_eval([t] * 5, ctx=ctx)
    assert res.passed
    spec = IntegralSpec([t] * 6, 0.05, 0.05)
    assert abs(integrate(spec, ctx) - cval(case["value"])) < 1e-12
    assert abs(spiridonov_rhs([t] * 6, 0.05, 0.05, ctx) - cval(case["value"])) < 1e-12


def test_complex_oracle(oracles):
    case = oracles["beta_integral"][1]
    p, q = cval(case["p"]), cval(case["q"])
    ctx = EllipticContext(p=p, q=q)
    ts = [cval(t) for t in case["t"]]
    got = integrate(IntegralSpec(ts, p, q), ctx)
    assert abs(got - cval(case["value"])) <= 1e-12 * max(1, got.scale)
    assert abs(spiridonov_rhs(ts, p, q, ctx) - cval(case["value"])) <= 1e-12 * max(1, got.scale)


def test_seeded_draws(ctx, rng):
    for _ in range(3):
        t_free = draw_spiridonov(ctx, rng)
        assert spiridonov_eval(t_free, ctx=ctx.with_(tol=1e-7))
        assert radius_robustness_check(t_free, ctx.with_(tol=1e-7))


def test_forbidden_product(ctx):
    with pytest.raises(DegenerateError):
        spiridonov_eval([0.5, 2.0, 0.3, 0.4, 0.6], ctx=ctx)


def test_qshift_ratio(ctx, rng):
    spec = _spec(ctx, rng)
    for k in (0, 1, 2, 3):
        x = random_point(rng, 0.6, 1.4)
        res = qshift_ratio_check(x, k, spec, ctx)
        assert res.passed
    u = random_points(rng, 5, 0.5, 0.9)
    u.append(ctx.q / np.prod(u))
    assert qshift_vwp_check(0.9 + 0.2j, 2, u, ctx.p, ctx.q, ctx)


def test_criterion_separates_balanced(ctx, rng):
    spec = _spec(ctx, rng)
    assert elliptic_criterion_check(spec, 0.8 + 0.3j, ctx)
    off = IntegralSpec([t * 1.1 for t in spec.t], spec.p, spec.q)
    assert not elliptic_criterion_check(off, 0.8 + 0.3j, ctx)


def test_residue_link(ctx, rng):
    u = random_points(rng, 5, 0.5, 0.9)
    res = residue_series_link(u, 2, ctx)
    assert res.passed


@pytest.mark.parametrize("k,l", [(0, 1), (1, 2), (2, 0)])
def test_continuous_biorthogonality(k, l):
    rng = SMALL_P.rng("cb", k, l)
    t_free = draw_biorthogonality(k, l, SMALL_P, rng)
    assert continuous_biorthogonality(t_free, k, l, ctx=SMALL_P)


def test_diagonal_integral_nonzero():
    rng = SMALL_P.rng("diag")
    t_free = draw_biorthogonality(0, 0, SMALL_P, rng)
    est, _, _ = biorthogonality_integral(t_free, 0, 0, ctx=SMALL_P)
    assert abs(est) > 1e-6 * est.scale


def test_pole_separation_is_enforced():
    with pytest.raises(DomainError, match="does not separate"):
        biorthogonality_integral([0.7, 0.7, 0.7, 0.9, 0.4], 1, 0, ctx=SMALL_P)
