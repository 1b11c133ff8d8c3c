"""Well-poised elliptic contour integrals, the elliptic beta integral and
the residue and biorthogonality checks built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .biorthogonal import r_fn
from .gamma import _lattice_hit, egamma, gamma_residue_constant
from .numerics import (
    DEFAULT,
    DegenerateError,
    DomainError,
    EllipticContext,
    EllipticError,
    PoleError,
    circle_integral,
    compare,
    random_point,
    relative_residual,
    trapezoid_contour,
    worst,
)
from .theta import theta
from .toolkit import efac, efac_multi, binom2


@dataclass
class IntegralSpec:
    t: list
    p: complex
    q: complex
    radius: float = 1.0
    nodes: int = 64
    max_doublings: int = 8
    notes: list = field(default_factory=list)

    @property
    def m(self):
        return len(self.t) - 1

    def balancing_defect(self):
        prod = 1 + 0j
        for t in self.t:
            prod *= t
        target = (self.p * self.q) ** ((self.m - 3) / 2)
        return abs(prod - target) / max(abs(target), 1e-300)

    @property
    def balanced(self):
        return self.balancing_defect() <= 1e-12

    def validate(self):
        for t in self.t:
            if abs(t) >= self.radius:
                raise DomainError(f"parameter outside disk: |t|={abs(t):.6g} >= radius {self.radius}")


def inv_gamma_x2(x, p, q, ctx: EllipticContext = DEFAULT):
    """1/Gamma(x^2, x^-2; p, q) = -theta(x^2;p) theta(x^2;q) / x^2."""
    x2 = x * x
    return -theta(x2, p, ctx) * theta(x2, q, ctx) / x2


def wp_integrand(x, spec: IntegralSpec, ctx: EllipticContext = DEFAULT):
    """prod_j Gamma(t_j x^{+-}) / Gamma(x^{+-2}); scalar or array x."""
    p, q = spec.p, spec.q
    try:
        out = inv_gamma_x2(x, p, q, ctx)
        for t in spec.t:
            out = out * egamma(t * x, p, q, ctx) * egamma(t / x, p, q, ctx)
    except PoleError as exc:
        raise PoleError(f"integrand pole at x={x}") from exc
    return out


def integrate(spec: IntegralSpec, ctx: EllipticContext = DEFAULT, integrand=None):
    """(1/2 pi i) of the integral of f(x) dx/x over |x| = spec.radius."""
    f = integrand if integrand is not None else (lambda x: wp_integrand(x, spec, ctx))
    return trapezoid_contour(f, spec.radius, spec.nodes, spec.max_doublings, ctx)


def measure_integrand(x, spec: IntegralSpec, ctx: EllipticContext = DEFAULT):
    """wp_integrand(x)/x, the full integrand against dx/(2 pi i)."""
    return wp_integrand(x, spec, ctx) / x


def qshift_ratio_closed(x, k: int, spec: IntegralSpec, ctx: EllipticContext = DEFAULT):
    """f(q^k x)/f(x) from the factorial form, valid for any parameters.

    Here f includes the 1/x of the measure; without it the ratio gains q^k.
    """
    p, q, m = spec.p, spec.q, spec.m
    prod_t = 1 + 0j
    for t in spec.t:
        prod_t *= t
    C = (-1) ** (m + 1) * q ** (m - 3) / prod_t
    out = C**k * q ** (binom2(k) * (m - 3)) * x ** (k * (m - 3))
    out *= theta(q ** (2 * k) * x * x, p, ctx) / theta(x * x, p, ctx)
    for t in spec.t:
        out *= efac(t * x, k, ctx, q=q, p=p) / efac(q * x / t, k, ctx, q=q, p=p)
    return out


def qshift_ratio_check(x, k: int, spec: IntegralSpec, ctx: EllipticContext = DEFAULT):
    lhs = measure_integrand(spec.q**k * x, spec, ctx) / measure_integrand(x, spec, ctx)
    return compare(lhs, qshift_ratio_closed(x, k, spec, ctx), ctx, witness=dict(x=x, k=k), label="q-shift ratio")


def qshift_vwp_check(x, k: int, u, p, q, ctx: EllipticContext = DEFAULT):
    """For m = 5 with t_5 = p u_5 and u_0...u_5 = q, f(q^k x)/f(x) has the
    very-well-poised form theta(q^2k x^2)/theta(x^2) prod (u_j x)_k/(q x/u_j)_k."""
    spec = residue_spec(u, p, q)
    lhs = measure_integrand(q**k * x, spec, ctx) / measure_integrand(x, spec, ctx)
    rhs = theta(q ** (2 * k) * x * x, p, ctx) / theta(x * x, p, ctx)
    for uj in u:
        rhs *= efac(uj * x, k, ctx, q=q, p=p) / efac(q * x / uj, k, ctx, q=q, p=p)
    return compare(lhs, rhs, ctx, witness=dict(x=x, k=k), label="very-well-poised q-shift")


def elliptic_criterion_check(spec: IntegralSpec, x, ctx: EllipticContext = DEFAULT):
    """Compare f(q p x)/f(p x) with f(q x)/f(x); equal iff prod t_j^2 = (pq)^(m-3)."""
    p, q = spec.p, spec.q
    a = wp_integrand(q * p * x, spec, ctx) / wp_integrand(p * x, spec, ctx)
    b = wp_integrand(q * x, spec, ctx) / wp_integrand(x, spec, ctx)
    return compare(a, b, ctx, witness=dict(x=x), label="elliptic criterion")


def forbidden_products(ts, p, q, ctx: EllipticContext = DEFAULT):
    """Pairs (j, k), j <= k, with t_j t_k in p^{Z<=0} q^{Z<=0}."""
    bad = []
    for j in range(len(ts)):
        for k in range(j, len(ts)):
            prod = ts[j] * ts[k]
            if prod != 0 and _lattice_hit(1 / prod, p, q, 1e-10):
                bad.append((j, k))
    return bad


def spiridonov_rhs(ts, p, q, ctx: EllipticContext = DEFAULT):
    out = 2 * gamma_residue_constant(p, q, ctx)
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            out *= egamma(ts[i] * ts[j], p, q, ctx)
    return out


def spiridonov_eval(t_free, p=None, q=None, ctx: EllipticContext = DEFAULT, radius: float = 1.0,
                    nodes: int = 64, max_doublings: int = 8):
    """Elliptic beta integral over |x| = radius against its product evaluation.

    t_free holds t_0..t_4; t_5 is solved from t_0...t_5 = pq.
    """
    p = ctx.p if p is None else complex(p)
    q = ctx.q if q is None else complex(q)
    if len(t_free) != 5:
        raise DomainError("need five free parameters")
    prod = 1 + 0j
    for t in t_free:
        prod *= t
    ts = [complex(t) for t in t_free] + [p * q / prod]
    bad = forbidden_products(ts, p, q, ctx)
    if bad:
        raise DegenerateError(f"forbidden parameter product t_j t_k at {bad}")
    spec = IntegralSpec(ts, p, q, radius, nodes, max_doublings)
    spec.validate()
    est = integrate(spec, ctx)
    rhs = spiridonov_rhs(ts, p, q, ctx)
    return relative_residual(complex(est), rhs, est.scale, ctx,
                             witness=dict(t=ts, nodes=est.nodes, delta=est.delta), label="elliptic beta integral")


def draw_spiridonov(ctx: EllipticContext, rng, r_max: float = 0.8, tries: int = 200):
    """Five parameters with |t_j| <= r_max whose solved t_5 also lies inside r_max."""
    pq = abs(ctx.p * ctx.q)
    r_min = max(0.05, (pq / r_max) ** 0.2 * 1.02)
    for _ in range(tries):
        ts = [random_point(rng, r_min, r_max) for _ in range(5)]
        prod = 1 + 0j
        for t in ts:
            prod *= t
        if abs(ctx.p * ctx.q / prod) <= r_max:
            return ts
    raise DegenerateError("no admissible beta-integral draw")


def radius_robustness_check(t_free, ctx: EllipticContext = DEFAULT, radii=(0.95, 1.05)):
    p, q = ctx.p, ctx.q
    prod = 1 + 0j
    for t in t_free:
        prod *= t
    ts = [complex(t) for t in t_free] + [p * q / prod]
    inside = max(abs(t) for t in ts)
    for r in radii:
        if not inside < r < 1 / inside:
            raise DomainError(f"radius {r} does not separate the poles")
    vals = [integrate(IntegralSpec(ts, p, q, r), ctx) for r in radii]
    return compare(complex(vals[0]), complex(vals[1]), ctx, max(v.scale for v in vals),
                   witness=dict(radii=radii), label="contour radius robustness")


def pole_lattice(ts, p, q, rank: int = 6):
    """Poles t p^j q^i and their reciprocals, 0 <= i, j <= rank."""
    pts = []
    for t in ts:
        for j in range(rank + 1):
            for i in range(rank + 1):
                z = t * p**j * q**i
                pts.append(z)
                pts.append(1 / z)
    return pts


def residue_spec(u, p, q):
    """m = 5 balanced spec with t_j = u_j for j < 5 and t_5 = p u_5."""
    return IntegralSpec([complex(x) for x in u[:5]] + [p * u[5]], p, q)


def residue_at(x0, spec: IntegralSpec, ctx: EllipticContext = DEFAULT, radius=None):
    """Residue of wp_integrand(x)/x at x0 by small-circle quadrature."""
    others = [z for z in pole_lattice(spec.t, spec.p, spec.q) if abs(z - x0) > 1e-9 * abs(x0)]
    dmin = min(abs(z - x0) for z in others)
    safe = dmin / 4
    if radius is None:
        radius = safe
    elif radius > dmin / 2:
        raise DomainError(f"residue circle too large: use radius <= {safe:.3g}")
    return circle_integral(lambda x: measure_integrand(x, spec, ctx), x0, radius, nodes=32, max_doublings=10, ctx=ctx)


def residue_ratio_closed(u, k: int, p, q, ctx: EllipticContext = DEFAULT):
    u0 = u[0]
    out = theta(q ** (2 * k) * u0 * u0, p, ctx) / theta(u0 * u0, p, ctx) * q**k
    out *= efac_multi([u0 * u0] + [u0 * uj for uj in u[1:]], k, ctx, q=q, p=p)
    out /= efac_multi([q] + [q * u0 / uj for uj in u[1:]], k, ctx, q=q, p=p)
    return out


def residue_series_link(u_free, k_max: int, ctx: EllipticContext = DEFAULT):
    """Res_{u0 q^k} f / Res_{u0} f against the 10V9 term ratio, k = 1..k_max.

    u_free holds u_0..u_4; u_5 is solved from u_0...u_5 = q and the integral
    uses t_5 = p u_5 so that t_0...t_5 = pq.
    """
    p, q = ctx.p, ctx.q
    prod = 1 + 0j
    for uj in u_free:
        prod *= uj
    u = [complex(x) for x in u_free] + [q / prod]
    spec = residue_spec(u, p, q)
    qctx = ctx.with_(tol=max(ctx.tol, 1e-8))
    r0 = residue_at(u[0], spec, qctx)
    results = []
    for k in range(1, k_max + 1):
        rk = residue_at(u[0] * q**k, spec, qctx)
        num = complex(rk) / complex(r0)
        scale = abs(num) * (rk.delta / max(abs(complex(rk)), 1e-300) + r0.delta / max(abs(complex(r0)), 1e-300))
        results.append(relative_residual(num, residue_ratio_closed(u, k, p, q, ctx), scale, qctx,
                                         witness=dict(k=k, u=u), label="residue ratio"))
    return worst(results, "residue series link")


def biorthogonality_poles(ts, k: int, l: int, lam, p, q, tol=1e-10):
    """Inside-type poles of the continuous biorthogonality integrand.

    With lam = t_3 the theta factor merges into Gamma(p t_3 x^{+-}); the
    denominators of r_k and r_l add t_4 q^{-1-i} (i < k) and t_5 q^{-1-i} (i < l).
    """
    t0, t1, t2, t3, t4, t5 = ts
    merged = abs(lam - t3) <= tol * abs(t3)
    inside = [t0, t1, t2, t4, t5, p * t3 if merged else t3]
    inside += [t4 / q ** (1 + i) for i in range(k)]
    inside += [t5 / q ** (1 + i) for i in range(l)]
    return inside


def biorthogonality_integral(t_free, k: int, l: int, lam=None, ctx: EllipticContext = DEFAULT,
                             nodes: int = 64, max_doublings: int = 9):
    """Integral of the Gamma kernel times theta(lam x^{+-};q) r_k(x) r~_l(x) over |x| = 1.

    t_free holds (t0, t1, t2, t4, t5); t3 is solved from t0...t5 = q and
    lam defaults to t3. The unit circle must separate every inside-type
    pole from its reciprocal, which in practice means |t4| < |q|^k,
    |t5| < |q|^l, |t3| > 1 and |p t3| < 1.
    Returns (estimate, parameters, lam).
    """
    p, q = ctx.p, ctx.q
    if k > 2 or l > 2:
        raise DomainError("k, l must be at most 2")
    t0, t1, t2, t4, t5 = (complex(t) for t in t_free)
    t3 = q / (t0 * t1 * t2 * t4 * t5)
    ts = [t0, t1, t2, t3, t4, t5]
    lam = t3 if lam is None else complex(lam)
    inside = biorthogonality_poles(ts, k, l, lam, p, q)
    worst_pole = max(abs(z) for z in inside)
    if worst_pole >= 1:
        raise DomainError(f"unit circle does not separate poles: inside-type pole of modulus {worst_pole:.4g}")
    spec = IntegralSpec(ts, p, q, 1.0, nodes, max_doublings)
    dual = (t0, t1, t2, t3, t5, t4)

    def f(x):
        base = wp_integrand(x, spec, ctx) * theta(lam * x, q, ctx) * theta(lam / x, q, ctx)
        rk = np.array([complex(r_fn(k, xi, ts, ctx)) for xi in x])
        rl = np.array([complex(r_fn(l, xi, dual, ctx)) for xi in x])
        return base * rk * rl
    return integrate(spec, ctx, f), ts, lam


def continuous_biorthogonality(t_free, k: int, l: int, lam=None, ctx: EllipticContext = DEFAULT,
                               nodes: int = 64, max_doublings: int = 9):
    """For k != l the integral vanishes relative to the largest integrand value.

    For k == l nothing is asserted; the result is a trivial pass that
    carries the integral in its witness.
    """
    est, ts, lam = biorthogonality_integral(t_free, k, l, lam, ctx, nodes, max_doublings)
    target = 0 if k != l else complex(est)
    return relative_residual(complex(est), target, est.scale, ctx,
                             witness=dict(t=ts, k=k, l=l, lam=lam, nodes=est.nodes, integral=complex(est)),
                             label="continuous biorthogonality")


def draw_biorthogonality(k: int, l: int, ctx: EllipticContext, rng, tries: int = 200):
    """(t0, t1, t2, t4, t5) satisfying the pole-separation conditions for ctx."""
    p, q = ctx.p, ctx.q
    for _ in range(tries):
        t0, t1, t2 = (random_point(rng, 0.6, 0.85) for _ in range(3))
        t4 = random_point(rng, 0.5, 0.8) * abs(q) ** k
        t5 = random_point(rng, 0.5, 0.8) * abs(q) ** l
        t3 = q / (t0 * t1 * t2 * t4 * t5)
        inside = biorthogonality_poles([t0, t1, t2, t3, t4, t5], k, l, t3, p, q)
        if max(abs(z) for z in inside) < 0.9 and abs(t3) > 1.1:
            return [t0, t1, t2, t4, t5]
    raise DegenerateError("no admissible biorthogonality draw; p is likely too large")
