import cmath
import itertools

import numpy as np
import pytest

from ellhyp.numerics import EllipticContext, compare
from ellhyp.sos import (
    R,
    SosWeightKey,
    W,
    draw_height_offset,
    draw_spectral,
    expansion_check,
    four_term_sides,
    operator_consistency_check,
    operator_unitarity_check,
    path_independence_check,
    phi,
    phi_M,
    phi_M_check,
    sos_weight,
    symmetry_check,
    unitarity_check,
    ybe_sides,
    ybe_tuples,
    yang_baxter_check,
)

from conftest import cval


@pytest.fixture
def draw(ctx, rng):
    lam = draw_height_offset(rng)
    u, v, w = draw_spectral(rng, 3)
    return lam, u, v, w


def test_trivial_weights(ctx, draw):
    lam, u, _, _ = draw
    assert R(lam, 1, 1, 1, 1, u, ctx) == 1
    assert R(lam, -1, -1, -1, -1, u, ctx) == 1
    assert R(lam, 1, 1, 1, -1, u, ctx) == 0
    assert not SosWeightKey(lam, 1, 1, -1, -1, u).admissible


def test_weight_vanishes_at_unit_argument(ctx, draw):
    lam = draw[0]
    assert R(lam, 1, -1, 1, -1, 1, ctx) == 0


def test_weight_oracle(oracles):
    case = oracles["sos_plusminus"][0]
    ctx = EllipticContext(p=cval(case["p"]), q=cval(case["q"]))
    got = R(cval(case["lam"]), 1, -1, 1, -1, cval(case["u"]), ctx)
    assert abs(got - cval(case["value"])) < 1e-13 * max(1, abs(got))


def test_symmetries(ctx, draw):
    assert symmetry_check(draw[0], draw[1], ctx)


def test_face_weight_relabelling(ctx, draw):
    lam, u, _, _ = draw
    assert W(lam, lam + 1, lam + 1, lam + 2, u, ctx) == R(lam, 1, 1, 1, 1, u, ctx)
    assert W(lam, lam + 1, lam - 1, lam, u, ctx) == R(lam, -1, 1, -1, 1, u, ctx)


def test_all_plus_tuple_exact(ctx, draw):
    lhs, rhs, _ = ybe_sides(1, 1, 1, 1, 1, 1, *draw, ctx)
    assert lhs == rhs == 1


def test_twenty_tuples(ctx):
    assert len(ybe_tuples()) == 20


def test_yang_baxter(ctx, draw):
    res = yang_baxter_check(*draw, ctx.with_(tol=1e-12))
    assert res.passed


def test_four_term_case(ctx, draw):
    lhs, rhs = four_term_sides(*draw, ctx)
    assert compare(lhs, rhs, ctx.with_(tol=1e-12))
    L, _, _ = ybe_sides(1, -1, 1, 1, -1, 1, *draw, ctx)
    assert abs(L - lhs) <= 1e-12 * max(1, abs(L))


def test_operator_form(ctx, draw):
    assert operator_consistency_check(*draw, ctx.with_(tol=1e-13))


def test_unitarity(ctx, draw):
    lam, u, v, _ = draw
    assert unitarity_check(lam, u, v, ctx.with_(tol=1e-12))
    assert unitarity_check(lam, u, u, ctx)
    assert operator_unitarity_check(lam, u, v, ctx.with_(tol=1e-12))


def test_phi_reductions(ctx, draw, rng):
    lam, u = draw[0], draw[1]
    s = cmath.sqrt(u)
    x = draw_spectral(rng, 1)[0]
    for c in (lam + 1, lam - 1):
        a1 = phi_M(1, lam, c, s, x, ctx)
        a2 = phi(lam, c, s, x, ctx)
        assert abs(a1 - a2) <= 1e-13 * max(1, abs(a2))
    assert path_independence_check(lam, s, x, ctx)


@pytest.mark.parametrize("M", [1, 2, 3])
def test_phi_closed_form(ctx, draw, rng, M):
    s = cmath.sqrt(draw[1])
    assert phi_M_check(M, draw[0], s, draw_spectral(rng, 1)[0], ctx)


def test_weight_expansion(ctx, draw, rng):
    s = cmath.sqrt(draw[1])
    xs = draw_spectral(rng, 8)
    assert expansion_check(draw[0], s, xs, ctx)
    assert expansion_check(draw[0], -s, xs, ctx)
