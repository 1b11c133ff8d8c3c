from fractions import Fraction

import pytest

from ellhyp import classical
from ellhyp.numerics import DomainError, EllipticContext, random_point, random_points
from ellhyp.series import (
    SeriesSpec,
    bailey_iterated_check,
    bailey_transform,
    binomial_expansion_check,
    connection_check,
    e_sum,
    e_sum_reversal_check,
    elliptic_binomial,
    frenkel_turaev,
    indefinite_sum,
    indefinite_sum_check,
    matrix_inversion_check,
    minton_sum,
    pascal_recursion_check,
    connection_addition_check,
    connection_coefficient,
    connection_convolution_check,
    connection_double_sum,
    connection_unitarity_check,
    telescoping_rational_check,
    saalschutz_limit_check,
    total_ellipticity_check,
    v_even_vanishing_check,
    v_sum,
    warnaar_quadratic,
    warnaar_sides,
    bibasic_check,
    kronecker_check,
    telescoping_check,
)
from ellhyp.theta import theta
from ellhyp.toolkit import efac, efac_multi, three_term_check

from conftest import cval


def test_e_sum_trivial(ctx):
    assert e_sum(SeriesSpec("E", 0, [0.3], [0.5]), ctx) == 1
    q = ctx.q
    want = 1 + efac(q**-2, 1, ctx) / efac(q, 1, ctx) + efac(q**-2, 2, ctx) / efac(q, 2, ctx)
    assert abs(e_sum(SeriesSpec("E", 2), ctx) - want) < 1e-13


def test_e_sum_validation(ctx):
    with pytest.raises(DomainError):
        e_sum(SeriesSpec("E", 2, [0.3], []), ctx)
    with pytest.raises(DomainError):
        e_sum(SeriesSpec("E", 2, [0.3], [0.4], balanced=True), ctx)


def test_e_sum_reversal(ctx, rng):
    for n in range(5):
        assert e_sum_reversal_check(random_points(rng, 2), random_points(rng, 2), n, random_point(rng), ctx)


def test_v_sum_trivial_and_first_term(ctx):
    q, p = ctx.q, ctx.p
    a, bs = 0.7 + 0.2j, [0.5, 1.1j, 0.8 - 0.3j, 1.3, q**-1]
    assert v_sum(a, bs, 0, ctx) == 1
    t1 = theta(a * q * q, p, ctx) / theta(a, p, ctx) * efac(a, 1, ctx) / efac(q, 1, ctx) * q
    for b in bs:
        t1 *= efac(b, 1, ctx) / efac(a * q / b, 1, ctx)
    assert abs(v_sum(a, bs, 1, ctx) - (1 + t1)) < 1e-13 * max(1, abs(t1))


def test_v_sum_oracle(oracles):
    case = oracles["vsum_10v9"][0]
    c = EllipticContext(p=cval(case["p"]), q=cval(case["q"]))
    got = v_sum(cval(case["a"]), [cval(b) for b in case["b"]], case["n"], c)
    want = cval(case["value"])
    assert abs(got - want) <= 1e-12 * max(1, got.scale)


def test_v_even_vanishing(ctx, rng):
    assert v_even_vanishing_check(random_points(rng, 4), 2, ctx)
    assert v_even_vanishing_check(random_points(rng, 4), 2, ctx, root=-1)


@pytest.mark.parametrize("n", range(9))
def test_frenkel_turaev(ctx, rng, n):
    assert frenkel_turaev(*random_points(rng, 4), n, ctx)


def test_frenkel_turaev_n1_matches_three_term(ctx, rng):
    assert frenkel_turaev(*random_points(rng, 4), 1, ctx).ratio < 1e-12
    assert three_term_check(*random_points(rng, 4), ctx).ratio < 1e-12


def test_saalschutz_oracle_itself():
    q = 0.3 - 0.2j
    a, b, c = 0.4 + 0.1j, 1.3 - 0.2j, 0.7j
    for n in range(6):
        s, pr = classical.saalschutz_sum(a, b, c, n, q), classical.saalschutz_product(a, b, c, n, q)
        assert abs(s - pr) < 1e-10 * max(1, abs(pr))


def test_saalschutz_limit(ctx, rng):
    for n in range(6):
        assert saalschutz_limit_check(*random_points(rng, 3), n, ctx)


def test_binomial(ctx, rng):
    a, b, c = random_points(rng, 3)
    assert abs(elliptic_binomial(0, 0, a, b, c, ctx) - 1) < 1e-15
    for n in range(5):
        for x in random_points(rng, 8):
            assert binomial_expansion_check(n, a, b, c, x, ctx)
    for n in range(1, 6):
        assert pascal_recursion_check(n, min(n - 1, 2), a, b, c, ctx)


def test_connection_against_double_sum(ctx, rng):
    a, b, c, d = random_points(rng, 4)
    assert abs(connection_coefficient(a, b, c, d, 0, 0, 0, ctx) - 1) < 1e-14
    for n in range(1, 4):
        for k in range(n + 1):
            for l in range(n + 1):
                r = connection_coefficient(a, b, c, d, n, k, l, ctx)
                ds = connection_double_sum(a, b, c, d, n, k, l, ctx)
                assert abs(r - ds) <= 1e-10 * max(1, r.scale, ds.scale)


def test_connection_and_group_laws(ctx, rng):
    for n in range(4):
        a, b, c, d = random_points(rng, 4)
        for k in range(n + 1):
            assert connection_check(a, b, c, d, n, k, random_point(rng), ctx)
        assert connection_unitarity_check(a, b, c, d, n, ctx)
    assert connection_addition_check(*random_points(rng, 6), 3, ctx)
    a, b, c, d = random_points(rng, 4)
    for al in (0, 1):
        for be in (0, 1):
            assert connection_convolution_check(a, b, c, d, 2, 2, al, be, ctx)


def test_bailey(ctx, rng):
    assert bailey_transform(*random_points(rng, 6), 0, ctx).residual < 1e-14
    assert bailey_transform(*random_points(rng, 6), 3, ctx)
    assert bailey_iterated_check(*random_points(rng, 6), 2, ctx)


def test_indefinite_sum(ctx, rng):
    a, e, f, g = random_points(rng, 4)
    for n in range(7):
        assert indefinite_sum_check(a, e, f, g, n, ctx)
    # induction step
    d = indefinite_sum(a, e, f, g, 4, ctx) - indefinite_sum(a, e, f, g, 3, ctx)
    assert abs(d) > 0


def test_telescoping_family(ctx, rng):
    a, b, c, d = random_points(rng, 4)
    # constant length-1 sequences: a restatement of the three-term identity
    assert telescoping_check([a], [b], [c], [d], ctx)
    seqs = [random_points(rng, 8) for _ in range(4)]
    assert telescoping_check(*seqs, ctx)
    assert telescoping_rational_check(*seqs, ctx)
    assert bibasic_check(*random_points(rng, 4), 0.3, 0.45, 5, ctx)
    c, d = random_points(rng, 2)
    assert abs(kronecker_check(c, d, 0.3, 0.45, 0, ctx).residual) < 1e-14
    for n in range(1, 5):
        assert kronecker_check(c, d, 0.3, 0.45, n, ctx)


def test_quadratic(ctx, rng):
    for n in range(5):
        assert warnaar_quadratic(*random_points(rng, 3), n, ctx)


def test_quadratic_b_symmetry(ctx, rng):
    a, b, c = random_points(rng, 3)
    left, _ = warnaar_sides(a, b, c, 3, ctx)
    right, _ = warnaar_sides(a, ctx.q / b, c, 3, ctx)
    assert abs(left - right) <= 1e-12 * max(1, left.scale)


def test_minton(ctx, rng):
    assert abs(minton_sum(0.6, 0.3, [0.4], [0], ctx).residual) < 1e-15
    assert minton_sum(*random_points(rng, 2), random_points(rng, 2), [1, 1], ctx)
    assert minton_sum(*random_points(rng, 2), random_points(rng, 3), [2, 1, 2], ctx)


def test_minton_classical_shadow_exact():
    b, c = Fraction(3, 7), Fraction(5, 2)
    assert classical.minton_sum_exact(1, b, [c], [1]) == classical.minton_product_exact(1, b, [c], [1])
    cs, ms = [Fraction(1, 3), Fraction(9, 4)], [2, 1]
    assert classical.minton_sum_exact(3, b, cs, ms) == classical.minton_product_exact(3, b, cs, ms)


def test_total_ellipticity(ctx, rng):
    xs = random_points(rng, 4)
    assert total_ellipticity_check(xs, [0, 0, 0, 0], 3, 0.7, ctx).residual == 0
    assert total_ellipticity_check(xs, [0, 1, -1, 0], 3, 0.7, ctx)
    assert total_ellipticity_check(xs, [1, 0, 0, 0], 3, 0.7, ctx)
    with pytest.raises(DomainError):
        total_ellipticity_check(xs, [0, 1, 0, 0], 3, 0.7, ctx)


def test_matrix_inversion(ctx, rng):
    assert matrix_inversion_check(random_points(rng, 6), random_points(rng, 6), ctx)


def test_efac_multi_is_product(ctx):
    args = [0.3, 0.5j, 1.2]
    want = 1
    for a in args:
        want *= efac(a, 3, ctx)
    assert abs(efac_multi(args, 3, ctx) - want) < 1e-14 * max(1, abs(want))
