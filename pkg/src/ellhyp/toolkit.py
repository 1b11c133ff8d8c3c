"""Elliptic shifted factorials, the even generator X, interpolation and
partial-fraction style theta identities."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .numerics import (
    DEFAULT,
    DegenerateError,
    DomainError,
    EllipticContext,
    PoleError,
    binom2,
    compare,
    random_point,
    random_points,
    relative_residual,
    worst,
)
from .theta import qpochhammer_inf, theta, theta_pm, theta_ratio


def efac(a, k: int, ctx: EllipticContext = DEFAULT, q=None, p=None):
    """(a;q,p)_k = prod_{j<k} theta(a q^j; p). Base and nome default to the context."""
    q = ctx.q if q is None else q
    p = ctx.p if p is None else p
    if k < 0:
        raise DomainError("efac needs k >= 0")
    out = 1 + 0j
    for j in range(k):
        out *= theta(a * q**j, p, ctx)
    return out


def efac_multi(args, k: int, ctx: EllipticContext = DEFAULT, q=None, p=None):
    out = 1 + 0j
    for a in args:
        out *= efac(a, k, ctx, q, p)
    return out


def efac_ratio(nums, dens, k: int, ctx: EllipticContext = DEFAULT, q=None, p=None):
    """prod (nums; q, p)_k / prod (dens; q, p)_k.

    The theta factors are combined in scaled form, so the quotient stays
    finite when the individual factorials would overflow.
    """
    q = ctx.q if q is None else q
    p = ctx.p if p is None else p
    if k < 0:
        raise DomainError("efac needs k >= 0")
    qs = [q**j for j in range(k)]
    return theta_ratio([a * t for a in nums for t in qs], [b * t for b in dens for t in qs], p, ctx)


def efac_pm(a, x, k: int, ctx: EllipticContext = DEFAULT, q=None, p=None):
    """(a x^{+-}; q, p)_k."""
    return efac(a * x, k, ctx, q, p) * efac(a / x, k, ctx, q, p)


def efac_identity_suite(ctx: EllipticContext = DEFAULT, draws: int = 20, rng=None):
    """Worst residual over the four standard manipulation rules for (a;q,p)_k."""
    rng = ctx.rng("efac_identity_suite") if rng is None else rng
    q, p = ctx.q, ctx.p
    results = []
    for _ in range(draws):
        a = random_point(rng)
        n = int(rng.integers(0, 7))
        k = int(rng.integers(0, 7))
        m = int(rng.integers(-2, 3))
        w = dict(a=a, n=n, k=k, m=m)
        results.append(compare(efac(a, n + k, ctx), efac(a, n, ctx) * efac(a * q**n, k, ctx), ctx, witness=w))
        kk = min(k, n)
        lhs = efac(a, n - kk, ctx)
        rhs = (-1) ** kk * q ** binom2(kk) * efac(a, n, ctx) / (
            (a * q ** (n - 1)) ** kk * efac(q ** (1 - n) / a, kk, ctx))
        results.append(compare(lhs, rhs, ctx, witness=dict(w, k=kk)))
        rhs = (-1) ** k * a**k * q ** binom2(k) * efac(q ** (1 - k) / a, k, ctx)
        results.append(compare(efac(a, k, ctx), rhs, ctx, witness=w))
        lhs = efac(p**m * a, n, ctx)
        rhs = (-1) ** (m * n) / (a ** (m * n) * p ** (n * binom2(m)) * q ** (m * binom2(n))) * efac(a, n, ctx)
        results.append(compare(lhs, rhs, ctx, witness=w))
    return worst(results, "efac identities")


def x_generator(x, a, b, ctx: EllipticContext = DEFAULT):
    """X(x) = theta(a x^{+-}; p) / theta(b x^{+-}; p), even and p-elliptic in x."""
    p = ctx.p
    den = theta_pm(b, x, p, ctx)
    if den == 0:
        raise PoleError("evaluation at pole")
    return theta_pm(a, x, p, ctx) / den


def x_generator_derivative(x, a, b, ctx: EllipticContext = DEFAULT):
    p = ctx.p
    den = theta_pm(b, x, p, ctx)
    if den == 0:
        raise PoleError("evaluation at pole")
    pp = qpochhammer_inf(p, p, ctx)
    return a * pp**2 * theta_pm(b, a, p, ctx) * theta(x * x, p, ctx) / (x * x * den**2)


def lagrange_theta_interpolate(nodes, values, t, x, ctx: EllipticContext = DEFAULT):
    """Interpolate in the space of theta functions fixed by the nodes and t.

    The space consists of entire f with f(px) = (-1)^n y_1...y_n t^{-1} x^{-n} f(x);
    such f is determined by its values at the n nodes.
    """
    p = ctx.p
    n = len(nodes)
    if n != len(values) or n == 0:
        raise DomainError("need matching, nonempty nodes and values")
    tt = theta(t, p, ctx)
    if tt == 0:
        raise DegenerateError("degenerate nodes: t in p^Z")
    total = 0j
    for j, yj in enumerate(nodes):
        term = values[j] * theta(t * x / yj, p, ctx) / tt
        for k, yk in enumerate(nodes):
            if k == j:
                continue
            den = theta(yj / yk, p, ctx)
            if den == 0:
                raise DegenerateError("degenerate nodes")
            term *= theta(x / yk, p, ctx) / den
        total += term
    return total


def three_term_check(a, b, c, x, ctx: EllipticContext = DEFAULT):
    """theta(ax^{+-}, bc^{+-}) = theta(bx^{+-}, ac^{+-}) + (a/c) theta(cx^{+-}, ba^{+-})."""
    p = ctx.p
    t1 = theta_pm(a, x, p, ctx) * theta_pm(b, c, p, ctx)
    t2 = theta_pm(b, x, p, ctx) * theta_pm(a, c, p, ctx)
    t3 = a / c * theta_pm(c, x, p, ctx) * theta_pm(b, a, p, ctx)
    return relative_residual(t1, t2 + t3, max(abs(t1), abs(t2), abs(t3)), ctx,
                             witness=dict(a=a, b=b, c=c, x=x), label="three-term")


def _prod(vals):
    out = 1 + 0j
    for v in vals:
        out *= v
    return out


def _pf_expansion(x, ys, zs, ctx):
    p = ctx.p
    Y, Z = _prod(ys), _prod(zs)
    lhs = _prod(theta(x / z, p, ctx) / theta(x / y, p, ctx) for y, z in zip(ys, zs))
    terms = []
    for j, yj in enumerate(ys):
        num = _prod(theta(yj / z, p, ctx) for z in zs)
        den = _prod(theta(yj / yk, p, ctx) for k, yk in enumerate(ys) if k != j)
        terms.append(num / den * theta(x * Y / (yj * Z), p, ctx)
                     / (theta(Y / Z, p, ctx) * theta(x / yj, p, ctx)))
    return compare(lhs, sum(terms), ctx, max(map(abs, terms)))


def _pf_vanishing(ys, zs, ctx):
    p = ctx.p
    terms = []
    for j, yj in enumerate(ys):
        num = _prod(theta(yj / z, p, ctx) for z in zs)
        den = _prod(theta(yj / yk, p, ctx) for k, yk in enumerate(ys) if k != j)
        terms.append(num / den)
    return compare(sum(terms), 0, ctx, max(map(abs, terms)))


def _pf_symmetric_expansion(x, ys, zs, ctx):
    # zs has n-1 entries
    p = ctx.p
    lhs = _prod(theta_pm(x, z, p, ctx) for z in zs) / _prod(theta_pm(x, y, p, ctx) for y in ys)
    terms = []
    for j, yj in enumerate(ys):
        num = _prod(theta_pm(yj, z, p, ctx) for z in zs)
        den = theta_pm(x, yj, p, ctx) * _prod(theta_pm(yj, yk, p, ctx) for k, yk in enumerate(ys) if k != j)
        terms.append(num / den)
    return compare(lhs, sum(terms), ctx, max(map(abs, terms)))


def _pf_symmetric_vanishing(ys, zs, ctx):
    # zs holds z_2..z_{n-1}
    p = ctx.p
    terms = []
    for j, yj in enumerate(ys):
        num = yj * _prod(theta_pm(yj, z, p, ctx) for z in zs)
        den = _prod(theta_pm(yj, yk, p, ctx) for k, yk in enumerate(ys) if k != j)
        terms.append(num / den)
    return compare(sum(terms), 0, ctx, max(map(abs, terms)))


def partial_fraction_suite(n: int, ctx: EllipticContext = DEFAULT, draws: int = 10, rng=None):
    """Worst residual over the four theta partial-fraction identities of size n."""
    if not 2 <= n <= 8:
        raise DomainError("partial_fraction_suite needs 2 <= n <= 8")
    rng = ctx.rng("partial_fraction_suite", n) if rng is None else rng
    results = []
    for _ in range(draws):
        ys = random_points(rng, n)
        zs = random_points(rng, n)
        x = random_point(rng)
        w = dict(n=n, y=ys, z=zs, x=x)
        results.append(_pf_expansion(x, ys, zs, ctx))
        zb = zs[:-1] + [_prod(ys) / _prod(zs[:-1])]
        results.append(_pf_vanishing(ys, zb, ctx))
        results.append(_pf_symmetric_expansion(x, ys, zs[:-1], ctx))
        results.append(_pf_symmetric_vanishing(ys, zs[1:-1], ctx))
        for r in results[-4:]:
            r.witness = w
    return worst(results, f"partial fractions n={n}")


def theta_sum_identity(n: int, ctx: EllipticContext = DEFAULT, x=None, a=None, b=None, rng=None):
    """Theta identity with a_1..a_n b_1..b_{n+2} = 1 (last b solved for)."""
    p = ctx.p
    rng = ctx.rng("theta_sum_identity", n) if rng is None else rng
    a = random_points(rng, n) if a is None else list(a)
    b = random_points(rng, n + 1) if b is None else list(b)[: n + 1]
    b = b + [1 / (_prod(a) * _prod(b))]
    x = random_point(rng) if x is None else x
    allp = a + b
    t1 = x ** (-n - 1) * _prod(theta(c * x, p, ctx) for c in allp)
    t2 = x ** (n + 1) * _prod(theta(c / x, p, ctx) for c in allp)
    terms = []
    for k, ak in enumerate(a):
        term = _prod(theta(ak * bj, p, ctx) for bj in b)
        for j, aj in enumerate(a):
            if j != k:
                term *= theta_pm(aj, x, p, ctx) / theta(ak / aj, p, ctx)
        terms.append(term)
    pref = (-1) ** n * x * theta(x**-2, p, ctx) / _prod(a)
    rhs = pref * sum(terms)
    scale = max(abs(t1), abs(t2), max(abs(pref * t) for t in terms))
    return relative_residual(t1 - t2, rhs, scale, ctx, witness=dict(a=a, b=b, x=x), label=f"theta sum n={n}")


def frobenius_determinant(n: int, ctx: EllipticContext = DEFAULT, rng=None):
    """det[theta(t x_i y_j)/theta(x_i y_j)] against its product evaluation."""
    if not 1 <= n <= 5:
        raise DomainError("frobenius_determinant needs 1 <= n <= 5")
    p = ctx.p
    rng = ctx.rng("frobenius_determinant", n) if rng is None else rng
    xs, ys = random_points(rng, n), random_points(rng, n)
    t = random_point(rng)
    mat = np.array([[theta(t * xi * yj, p, ctx) / theta(xi * yj, p, ctx) for yj in ys] for xi in xs])
    lhs = complex(np.linalg.det(mat))
    rhs = theta(t, p, ctx) ** (n - 1) * theta(t * _prod(xs) * _prod(ys), p, ctx)
    for i in range(n):
        for j in range(i + 1, n):
            rhs *= xs[j] * ys[j] * theta(xs[i] / xs[j], p, ctx) * theta(ys[i] / ys[j], p, ctx)
    for xi in xs:
        for yj in ys:
            rhs /= theta(xi * yj, p, ctx)
    scale = float(np.abs(mat).max()) ** n
    return relative_residual(lhs, rhs, scale, ctx, witness=dict(x=xs, y=ys, t=t), label=f"frobenius n={n}")


def _log_derivative_count(g, r, ctx):
    from .numerics import trapezoid_contour

    h = 1e-7 * r

    def integrand(x):
        gx = g(x)
        dg = (g(x + h) - g(x - h)) / (2 * h)
        return x * dg / gx

    qctx = ctx.with_(tol=1e-6)
    return trapezoid_contour(integrand, r, 64, 10, qctx)


def zero_pole_count(g, r, ctx: EllipticContext = DEFAULT) -> int:
    """Zeros minus poles of g in the annulus |p| r <= |x| < r.

    g must accept numpy arrays. The count comes from the argument principle on
    the outer circle minus the inner circle, with a central-difference g'.
    """
    outer = _log_derivative_count(g, r, ctx)
    inner = _log_derivative_count(g, abs(ctx.p) * r, ctx)
    val = complex(outer - inner)
    k = round(val.real)
    if abs(val - k) > 0.1:
        raise DomainError("contour too close to zero/pole")
    return int(k)


def elliptic_number(z, tau, ctx: EllipticContext = DEFAULT):
    """[z] = e^{-i pi z} theta(e^{2 pi i z}; e^{2 pi i tau})."""
    p = cmath.exp(2j * math.pi * tau)
    return cmath.exp(-1j * math.pi * z) * theta(cmath.exp(2j * math.pi * z), p, ctx)


def _jacobi_three_term(br, z, a, b, c):
    t1 = br(z + a) * br(z - a) * br(b + c) * br(b - c)
    t2 = br(z + b) * br(z - b) * br(a + c) * br(a - c)
    t3 = br(z + c) * br(z - c) * br(b + a) * br(b - a)
    return t1, t2 + t3, max(abs(t1), abs(t2), abs(t3))


def _two_term(br, a, b, c):
    t1 = br(b + c) * br(b - c)
    t2 = br(a + c) * br(a - c)
    t3 = br(b + a) * br(b - a)
    return t1, t2 + t3, max(abs(t1), abs(t2), abs(t3))


def elliptic_number_check(ctx: EllipticContext = DEFAULT, draws: int = 50, rng=None):
    """Returns (three-term result for elliptic numbers,
    two-term result for elliptic numbers, two-term result for sin)."""
    rng = ctx.rng("elliptic_number_check") if rng is None else rng
    three, two_ell, two_sin = [], [], []
    for _ in range(draws):
        z, a, b, c = (complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)) for _ in range(4))
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.15, 0.6))
        br = lambda w: elliptic_number(w, tau, ctx)
        w = dict(z=z, a=a, b=b, c=c, tau=tau)
        three.append(relative_residual(*_jacobi_three_term(br, z, a, b, c), ctx, witness=w))
        two_ell.append(relative_residual(*_two_term(br, a, b, c), ctx, witness=w))
        two_sin.append(relative_residual(*_two_term(cmath.sin, a, b, c), ctx, witness=w))
    return worst(three, "[z] three-term"), worst(two_ell, "[z] two-term"), worst(two_sin, "sin two-term")
