import cmath

import pytest

from ellhyp.numerics import DomainError, compare
from ellhyp.sos import (
    FusedWeightSpec,
    R,
    W,
    boundary_independence_check,
    draw_height_offset,
    draw_hexagon,
    draw_spectral,
    fused_closed_form,
    fused_expansion_check,
    fused_vs_connection,
    fused_weight,
    fused_weight_naive,
    fused_yang_baxter,
    yang_baxter_check,
)


def _specs(M, N, a, u):
    for b in [a + j for j in range(-N, N + 1, 2)]:
        for c in [a + j for j in range(-M, M + 1, 2)]:
            for d in [b + j for j in range(-M, M + 1, 2)]:
                s = FusedWeightSpec(M, N, a, b, c, d, u)
                try:
                    s.validate()
                except DomainError:
                    continue
                yield s


def test_single_crossing_is_the_weight(ctx, rng):
    a = draw_height_offset(rng)
    u = draw_spectral(rng, 1)[0]
    for s in _specs(1, 1, a, u):
        assert abs(fused_weight(s, ctx) - W(s.a, s.b, s.c, s.d, u, ctx)) < 1e-14


def test_inadmissible(ctx):
    with pytest.raises(DomainError):
        FusedWeightSpec(1, 1, 0.3, 2.3, 1.3, 0.3, 0.7).validate()


@pytest.mark.parametrize("M,N", [(1, 2), (2, 1), (2, 2), (3, 2)])
def test_transfer_matches_naive_sum(ctx, rng, M, N):
    a = draw_height_offset(rng)
    u = draw_spectral(rng, 1)[0]
    for s in _specs(M, N, a, u):
        one, two = fused_weight(s, ctx), fused_weight_naive(s, ctx)
        assert abs(one - two) <= 1e-12 * max(1, abs(one))


@pytest.mark.parametrize("M,N", [(2, 1), (1, 2), (2, 2), (3, 3)])
def test_boundary_independence(ctx, rng, M, N):
    a = draw_height_offset(rng)
    u = draw_spectral(rng, 1)[0]
    for s in _specs(M, N, a, u):
        assert boundary_independence_check(s, ctx.with_(tol=1e-10))


@pytest.mark.parametrize("M,tol", [(1, 1e-9), (2, 1e-9), (3, 1e-7)])
def test_connection_coefficient_form(ctx, rng, M, tol):
    a = draw_height_offset(rng)
    u = draw_spectral(rng, 1)[0]
    for s in _specs(M, M, a, u):
        assert fused_vs_connection(s, ctx.with_(tol=tol))


def test_square_closed_form_reduces_to_weight(ctx, rng):
    a = draw_height_offset(rng)
    u = draw_spectral(rng, 1)[0]
    for s in _specs(1, 1, a, u):
        got = fused_closed_form(1, 1, s.a, s.b, s.c, s.d, cmath.sqrt(u), ctx)
        want = W(s.a, s.b, s.c, s.d, u, ctx)
        assert abs(got - want) <= 1e-13 * max(1, abs(want))


@pytest.mark.parametrize("M,N", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
def test_fused_expansion(ctx, rng, M, N):
    a = draw_height_offset(rng)
    s = cmath.sqrt(draw_spectral(rng, 1)[0])
    assert fused_expansion_check(M, N, a, s, draw_spectral(rng, 3), ctx)


def test_fused_yang_baxter_unit_case(ctx, rng):
    f = draw_height_offset(rng)
    u, v, w = draw_spectral(rng, 3)
    h = draw_hexagon(1, 1, 1, f, rng)
    assert fused_yang_baxter(1, 1, 1, h, u, v, w, ctx)
    assert yang_baxter_check(f, u, v, w, ctx)


@pytest.mark.parametrize("shape", [(2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2)])
def test_fused_yang_baxter(ctx, rng, shape):
    f = draw_height_offset(rng)
    for _ in range(3):
        h = draw_hexagon(*shape, f, rng)
        u, v, w = draw_spectral(rng, 3)
        res = fused_yang_baxter(*shape, h, u, v, w, ctx)
        assert res.passed
