"""Terminating elliptic hypergeometric sums and their summation and
transformation formulas."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import classical
from .numerics import (
    DEFAULT,
    DegenerateError,
    DomainError,
    EllipticContext,
    EllipticError,
    Scaled,
    binom2,
    compare,
    random_point,
    random_points,
    relative_residual,
    term_scale,
    worst,
)
from .theta import theta, theta_multi, theta_pm, theta_ratio, theta_ratio_scaled, unscale
from .toolkit import efac, efac_multi, efac_pm, efac_ratio


def _prod(vals):
    out = 1 + 0j
    for v in vals:
        out *= v
    return out


@dataclass
class SeriesSpec:
    """A terminating sum; kind "E" (general) or "V" (very-well-poised, z = q)."""

    kind: str
    n: int
    numerators: list = field(default_factory=list)
    denominators: list = field(default_factory=list)
    a: complex = 0j
    z: complex = 1 + 0j
    balanced: bool = False

    def balancing_defect(self, ctx: EllipticContext) -> float:
        q = ctx.q
        if self.kind == "E":
            lhs = q ** (-self.n) * _prod(self.numerators)
            rhs = q * _prod(self.denominators)
        else:
            m = len(self.numerators) + 4
            lhs = _prod(b * b for b in self.numerators)
            rhs = q ** (m - 7) * self.a ** (m - 5)
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs))

    def validate(self, ctx: EllipticContext):
        if self.kind not in ("E", "V"):
            raise DomainError("kind must be 'E' or 'V'")
        if self.n < 0:
            raise DomainError("termination n must be >= 0")
        if self.kind == "E" and len(self.numerators) != len(self.denominators):
            raise DomainError("E-sum needs as many numerator as denominator parameters")
        if self.balanced and self.balancing_defect(ctx) > 1e3 * ctx.eps_trunc:
            raise DomainError("balancing condition violated")


def _ratio_sum(num, den, n, z, ctx, q=None, vwp=None):
    """sum_{k<=n} prod(num)_k / prod(den)_k z^k, built from successive ratios.

    vwp, if given, maps k to an extra factor (m, L) = m exp(L) that is not
    folded into the ratio. The running term is kept as mantissa and log so
    that huge and tiny factors may meet without overflow.
    """
    q = ctx.q if q is None else q
    p = ctx.p
    total = 0j
    big = 0.0
    fm, fl = 1 + 0j, 0.0
    for k in range(n + 1):
        term = unscale(fm, fl) if vwp is None else unscale(*_mul(fm, fl, *vwp(k)))
        total += term
        big = max(big, abs(term))
        if k == n:
            break
        try:
            rm, rl = theta_ratio_scaled([c * q**k for c in num], [d * q**k for d in den], p, ctx)
        except DomainError:
            raise DegenerateError(f"denominator zero at k={k + 1}") from None
        if rm == 0:
            break
        fm, fl = _mul(fm, fl, rm * z, rl)
    return Scaled(total, big)


def _mul(m1, l1, m2, l2):
    # renormalise so the mantissa stays near unit size
    m, L = m1 * m2, l1 + l2
    if m != 0:
        e = math.log(abs(m))
        m, L = m / abs(m), L + e
    return m, L


def e_sum(spec: SeriesSpec, ctx: EllipticContext = DEFAULT):
    """sum_k (q^-n, a_1..a_m)_k / (q, b_1..b_m)_k z^k with the term scale attached."""
    spec.validate(ctx)
    q = ctx.q
    num = [q ** (-spec.n)] + list(spec.numerators)
    den = [q] + list(spec.denominators)
    return _ratio_sum(num, den, spec.n, spec.z, ctx)


def v_sum(a, b_list, n: int, ctx: EllipticContext = DEFAULT, q=None):
    """Very-well-poised sum m+1 V m (a; b_1, ...) summed over k = 0..n.

    b_list carries every parameter including the terminating one; n is the
    index at which the sum stops.
    """
    q = ctx.q if q is None else q
    p = ctx.p
    ta = theta(a, p, ctx)
    if ta == 0:
        raise DegenerateError("theta(a) vanishes")
    num = [a] + list(b_list)
    den = [q] + [a * q / b for b in b_list]
    return _ratio_sum(num, den, n, q, ctx, q=q, vwp=lambda k: theta_ratio_scaled([a * q ** (2 * k)], [a], p, ctx))


def e_sum_reversal_check(a_list, b_list, n, z, ctx: EllipticContext = DEFAULT):
    """Compare a balanced E-sum with its reversed-order form.

    The last entry of b_list is replaced to enforce q^-n a_1...a_m = q b_1...b_m.
    """
    q = ctx.q
    b_list = list(b_list)
    b_list[-1] = q ** (-n - 1) * _prod(a_list) / _prod(b_list[:-1])
    lhs = e_sum(SeriesSpec("E", n, list(a_list), b_list, z=z, balanced=True), ctx)
    rev = e_sum(SeriesSpec("E", n, [q ** (1 - n) / b for b in b_list], [q ** (1 - n) / a for a in a_list],
                           z=1 / z), ctx)
    pref = (-z) ** n / q ** binom2(n + 1) * efac_multi(a_list, n, ctx) / efac_multi(b_list, n, ctx)
    return compare(lhs, pref * rev, ctx, abs(pref) * rev.scale, label="E reversal")


def v_even_vanishing_check(b_free, n, ctx: EllipticContext = DEFAULT, root=1):
    """V(q^-n; b_1..b_r) with the last b solved from balancing, for even n."""
    q = ctx.q
    a = q ** (-n)
    m = len(b_free) + 5
    b_last = root * cmath.sqrt(q ** (m - 7) * a ** (m - 5) / _prod(b * b for b in b_free))
    val = v_sum(a, list(b_free) + [b_last], n, ctx)
    return compare(val, 0, ctx, label="V even vanishing")


def frenkel_turaev_sides(a, b, c, d, n, ctx: EllipticContext = DEFAULT):
    q = ctx.q
    e = a * a * q ** (n + 1) / (b * c * d)
    lhs = v_sum(a, [b, c, d, e, q ** (-n)], n, ctx)
    rhs = efac_ratio([a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)],
                     [a * q / b, a * q / c, a * q / d, a * q / (b * c * d)], n, ctx)
    return lhs, rhs


def frenkel_turaev(a, b, c, d, n, ctx: EllipticContext = DEFAULT):
    """Balanced 10V9 summation, e solved from a^2 q^{n+1} = bcde."""
    lhs, rhs = frenkel_turaev_sides(a, b, c, d, n, ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, b=b, c=c, d=d, n=n), label="frenkel-turaev")


def saalschutz_limit_check(a1, b1, c1, n, ctx: EllipticContext = DEFAULT, a=None, p_small=1e-30):
    """Balanced 10V9 sum at tiny p with a, d, e scaled by sqrt(p), against the
    classical 3phi2 evaluation with parameters (q^-n, a1, b1; c1, a1 b1 q^{1-n}/c1)."""
    q = ctx.q
    sctx = ctx.with_(p=p_small)
    s = cmath.sqrt(p_small)
    a = 0.7 + 0.2j if a is None else a
    b, c, d = a1, b1, a * q / c1
    e = a * a * q ** (n + 1) / (b * c * d)
    lhs = v_sum(a * s, [b, c, d * s, e * s, q ** (-n)], n, sctx)
    rhs = classical.saalschutz_product(a1, b1, c1, n, q)
    return compare(lhs, rhs, ctx, witness=dict(a=a1, b=b1, c=c1, n=n), label="saalschutz limit")


def elliptic_binomial(n, k, a, b, c, ctx: EllipticContext = DEFAULT):
    """Coefficient C_k^n in h_n(x;a) = sum_k C_k^n h_k(x;b) h_{n-k}(x;c), h_n(x;a) = (ax^{+-})_n."""
    if not 0 <= k <= n:
        return 0j
    q, p = ctx.q, ctx.p
    num = (q ** (n - k) * theta(q ** (2 * k - n) * b / c, p, ctx)
           * efac_multi([q, a * b, a * c], n, ctx) * efac(a / c, k, ctx) * efac(a / b, n - k, ctx))
    den = (theta(b / c, p, ctx) * efac(b * c, n, ctx) * efac_multi([q, a * b, q * b / c], k, ctx)
           * efac_multi([q, a * c, q * c / b], n - k, ctx))
    if den == 0:
        raise DegenerateError("denominator zero in elliptic binomial")
    return num / den


def h_fn(x, a, n, ctx: EllipticContext = DEFAULT):
    return efac_pm(a, x, n, ctx)


def binomial_expansion_check(n, a, b, c, x, ctx: EllipticContext = DEFAULT):
    terms = [elliptic_binomial(n, k, a, b, c, ctx) * h_fn(x, b, k, ctx) * h_fn(x, c, n - k, ctx)
             for k in range(n + 1)]
    return compare(h_fn(x, a, n, ctx), sum(terms), ctx, max(map(abs, terms)), label="binomial expansion")


def pascal_recursion_check(n, k, a, b, c, ctx: EllipticContext = DEFAULT):
    """C_k^{n+1} from C_{k-1}^n and C_k^n."""
    q, p = ctx.q, ctx.p
    lhs = elliptic_binomial(n + 1, k, a, b, c, ctx)
    t1 = (theta(a * c * q ** (2 * n - k + 1), p, ctx) * theta(a * q ** (k - 1) / c, p, ctx)
          / (theta(b * c * q**n, p, ctx) * theta(b * q ** (2 * k - 2 - n) / c, p, ctx))
          * elliptic_binomial(n, k - 1, a, b, c, ctx))
    t2 = (b * q ** (2 * k - n) * theta(a * b * q ** (n + k), p, ctx) * theta(a * q ** (n - k) / b, p, ctx)
          / (c * theta(b * c * q**n, p, ctx) * theta(b * q ** (2 * k - n) / c, p, ctx))
          * elliptic_binomial(n, k, a, b, c, ctx))
    return compare(lhs, t1 - t2, ctx, max(abs(t1), abs(t2)), label="pascal recursion")


def connection_coefficient(a, b, c, d, n, k, l, ctx: EllipticContext = DEFAULT):
    """Connection coefficient R_k^l(a,b,c,d;n):
    h_k(x;a) h_{n-k}(x;b) = sum_l R_k^l h_l(x;c) h_{n-l}(x;d), as a 12V11 sum."""
    if not (0 <= k <= n and 0 <= l <= n):
        raise DomainError("need 0 <= k, l <= n")
    q = ctx.q
    pref = (q ** (l * (l - n)) * efac(q, n, ctx) * efac_multi([a * c, a / c], k, ctx)
            * efac_multi([q ** (n - l) * b * d, b / d], l, ctx) * efac_multi([b * c, b / c], n - k, ctx)
            * efac(b / c, n - l, ctx))
    den = (efac_multi([c * d, b / c], n, ctx) * efac_multi([q, b * c, q ** (l - n) * c / d], l, ctx)
           * efac_multi([q, q ** (-l) * d / c], n - l, ctx))
    if den == 0:
        raise DegenerateError("denominator zero in connection coefficient")
    pref /= den
    A = q ** (-n) * c / b
    vs = v_sum(A, [q ** (-k), q ** (-l), q ** (k - n) * a / b, q ** (l - n) * c / d, c * d,
                   q ** (1 - n) / (a * b), q * c / b], min(k, l), ctx)
    return Scaled(pref * vs, abs(pref) * vs.scale)


def connection_double_sum(a, b, c, d, n, k, l, ctx: EllipticContext = DEFAULT):
    """R_k^l composed from two binomial expansions (independent of the 12V11 route)."""
    q = ctx.q
    terms = [elliptic_binomial(k, j, a, c, b * q ** (n - k), ctx)
             * elliptic_binomial(n - j, l - j, b, c * q**j, d, ctx)
             for j in range(min(k, l) + 1)]
    return Scaled(sum(terms), max(map(abs, terms)))


def connection_check(a, b, c, d, n, k, x, ctx: EllipticContext = DEFAULT):
    lhs = h_fn(x, a, k, ctx) * h_fn(x, b, n - k, ctx)
    terms = [connection_coefficient(a, b, c, d, n, k, l, ctx) * h_fn(x, c, l, ctx) * h_fn(x, d, n - l, ctx)
             for l in range(n + 1)]
    return compare(lhs, sum(terms), ctx, max(map(abs, terms)), label="connection expansion")


def _connection_matrix(a, b, c, d, n, ctx, rows, cols):
    return [[connection_coefficient(a, b, c, d, n, k, l, ctx) for l in cols] for k in rows]


def _scales(M):
    """Entry-wise max(|value|, intermediate term scale) of a list-of-lists of Scaled values."""
    return np.array([[max(abs(v), getattr(v, "scale", 0.0)) for v in row] for row in M])


def connection_unitarity_check(a, b, c, d, n, ctx: EllipticContext = DEFAULT):
    idx = range(n + 1)
    L1, L2 = _connection_matrix(a, b, c, d, n, ctx, idx, idx), _connection_matrix(c, d, a, b, n, ctx, idx, idx)
    prod = np.array(L1, dtype=complex) @ np.array(L2, dtype=complex)
    scale = float((_scales(L1) @ _scales(L2)).max())
    res = float(np.abs(prod - np.eye(n + 1)).max())
    return relative_residual(res, 0, scale, ctx, witness=dict(a=a, b=b, c=c, d=d, n=n), label="R unitarity")


def connection_addition_check(a, b, c, d, e, f, n, ctx: EllipticContext = DEFAULT):
    idx = range(n + 1)
    L1, L2 = _connection_matrix(a, b, c, d, n, ctx, idx, idx), _connection_matrix(c, d, e, f, n, ctx, idx, idx)
    L3 = _connection_matrix(a, b, e, f, n, ctx, idx, idx)
    R1, R2, R3 = (np.array(L, dtype=complex) for L in (L1, L2, L3))
    scale = float(max((_scales(L1) @ _scales(L2)).max(), _scales(L3).max()))
    res = float(np.abs(R1 @ R2 - R3).max())
    return relative_residual(res, 0, scale, ctx, witness=dict(a=a, b=b, c=c, d=d, e=e, f=f, n=n),
                             label="R addition")


def connection_convolution_check(a, b, c, d, n1, n2, alpha, beta, ctx: EllipticContext = DEFAULT):
    q = ctx.q
    results = []
    n = n1 + n2
    for k1 in range(n1 + 1):
        for k2 in range(n2 + 1):
            for l in range(n + 1):
                lhs = connection_coefficient(a, b, c, d, n, k1 + k2, l, ctx)
                terms = []
                for l1 in range(max(0, l - n2), min(n1, l) + 1):
                    l2 = l - l1
                    r1 = connection_coefficient(a * q ** (alpha * k2), b * q ** (beta * (n2 - k2)), c, d, n1, k1, l1, ctx)
                    r2 = connection_coefficient(a * q ** ((1 - alpha) * k1), b * q ** ((1 - beta) * (n1 - k1)),
                                         c * q**l1, d * q ** (n1 - l1), n2, k2, l2, ctx)
                    terms.append(r1 * r2)
                results.append(compare(lhs, sum(terms), ctx, max(map(abs, terms)),
                                       witness=dict(k1=k1, k2=k2, l=l, alpha=alpha, beta=beta)))
    return worst(results, f"R convolution alpha={alpha} beta={beta}")


def bailey_sides(a, b, c, d, e, f, n, ctx: EllipticContext = DEFAULT):
    q = ctx.q
    g = q ** (n + 2) * a**3 / (b * c * d * e * f)
    lam = a * a * q / (b * c * d)
    lhs = v_sum(a, [b, c, d, e, f, g, q ** (-n)], n, ctx)
    pref = efac_ratio([a * q, a * q / (e * f), lam * q / e, lam * q / f],
                      [a * q / e, a * q / f, lam * q, lam * q / (e * f)], n, ctx)
    vs = v_sum(lam, [lam * b / a, lam * c / a, lam * d / a, e, f, g, q ** (-n)], n, ctx)
    return lhs, Scaled(pref * vs, abs(pref) * vs.scale)


def bailey_transform(a, b, c, d, e, f, n, ctx: EllipticContext = DEFAULT):
    """Two-term transformation of balanced 12V11 sums (g solved from bcdefg = q^{n+2} a^3)."""
    lhs, rhs = bailey_sides(a, b, c, d, e, f, n, ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, b=b, c=c, d=d, e=e, f=f, n=n), label="bailey")


def bailey_iterated_check(a, b, c, d, e, f, n, ctx: EllipticContext = DEFAULT):
    """The transformation obtained by applying the Bailey transformation three times."""
    q = ctx.q
    g = q ** (n + 2) * a**3 / (b * c * d * e * f)
    lhs = v_sum(a, [b, c, d, e, f, g, q ** (-n)], n, ctx)
    pref = g**n * efac_ratio([a * q, b, a * q / (c * g), a * q / (d * g), a * q / (e * g), a * q / (f * g)],
                             [a * q / c, a * q / d, a * q / e, a * q / f, a * q / g, b / g], n, ctx)
    A = q ** (-n) * g / b
    vs = v_sum(A, [q ** (-n) * g / a, a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / (b * f), g,
                   q ** (-n)], n, ctx)
    return compare(lhs, Scaled(pref * vs, abs(pref) * vs.scale), ctx, label="bailey iterated")


def indefinite_sum(a, e, f, g, n, ctx: EllipticContext = DEFAULT):
    """sum_{k<=n} theta(aq^{2k})/theta(a) (e,f,g,h)_k/(aq/e,aq/f,aq/g,aq/h)_k q^k, h = a^2/(efg).

    Unlike a V-sum there is no (a)_k/(q)_k factor.
    """
    q, p = ctx.q, ctx.p
    h = a * a / (e * f * g)
    if theta(a, p, ctx) == 0:
        raise DegenerateError("theta(a) vanishes")
    return _ratio_sum([e, f, g, h], [a * q / e, a * q / f, a * q / g, a * q / h], n, q, ctx,
                      vwp=lambda k: theta_ratio_scaled([a * q ** (2 * k)], [a], p, ctx))


def indefinite_closed_form(a, e, f, g, n, ctx: EllipticContext = DEFAULT):
    p = ctx.p
    h = a * a / (e * f * g)
    pref = theta_multi([a / e, a / f, a / g, a / (e * f * g)], p, ctx) / theta_multi(
        [a, a / (e * f), a / (e * g), a / (f * g)], p, ctx)
    ratio = efac_multi([e, f, g, h], n + 1, ctx) / efac_multi([a / e, a / f, a / g, a / h], n + 1, ctx)
    return Scaled(pref * (1 - ratio), max(abs(pref), abs(pref * ratio)))


def indefinite_sum_check(a, e, f, g, n, ctx: EllipticContext = DEFAULT):
    """Closed form of the indefinite very-well-poised sum with efgh = a^2."""
    return compare(indefinite_sum(a, e, f, g, n, ctx), indefinite_closed_form(a, e, f, g, n, ctx), ctx,
                   witness=dict(a=a, e=e, f=f, g=g, n=n), label="indefinite sum")


def telescoping_check(a, b, c, d, ctx: EllipticContext = DEFAULT):
    """Telescoping theta identity for four sequences of equal length."""
    p = ctx.p
    n1 = len(a)
    B = [theta_pm(a[j], d[j], p, ctx) * theta_pm(b[j], c[j], p, ctx) for j in range(n1)]
    C = [theta_pm(b[j], d[j], p, ctx) * theta_pm(a[j], c[j], p, ctx) for j in range(n1)]
    terms = []
    for k in range(n1):
        t = a[k] / c[k] * theta_pm(c[k], d[k], p, ctx) * theta_pm(b[k], a[k], p, ctx)
        terms.append(t * _prod(B[:k]) * _prod(C[k + 1:]))
    lhs = sum(terms)
    PB, PC = _prod(B), _prod(C)
    return compare(lhs, PB - PC, ctx, max(max(map(abs, terms)), abs(PB), abs(PC)), label="telescoping")


def telescoping_rational_check(a, b, c, d, ctx: EllipticContext = DEFAULT):
    """The rational (p = 0) shadow of the telescoping identity."""
    n1 = len(a)
    B = [(a[j] - d[j]) * (b[j] - c[j]) for j in range(n1)]
    C = [(b[j] - d[j]) * (a[j] - c[j]) for j in range(n1)]
    terms = [(c[k] - d[k]) * (b[k] - a[k]) * _prod(B[:k]) * _prod(C[k + 1:]) for k in range(n1)]
    PB, PC = _prod(B), _prod(C)
    return compare(sum(terms), PB - PC, ctx, max(max(map(abs, terms)), abs(PB), abs(PC)), label="telescoping rational")


def _bibasic_weight(c, d, q, r, k, ctx):
    p = ctx.p
    return (theta(c * d * q**k * r**k, p, ctx) * theta(d * r**k / (c * q**k), p, ctx)
            / (theta(c * d, p, ctx) * theta(d / c, p, ctx)))


def bibasic_check(a, b, c, d, q, r, n, ctx: EllipticContext = DEFAULT):
    """Bibasic summation with independent bases q and r."""
    p = ctx.p
    terms = []
    for k in range(n + 1):
        t = (_bibasic_weight(c, d, q, r, k, ctx)
             * efac_pm(d, a, k, ctx, q=r) * efac_pm(c, b, k, ctx, q=q)
             / (efac_pm(r * d, b, k, ctx, q=r) * efac_pm(q * c, a, k, ctx, q=q)) * q**k)
        terms.append(t)
    pref = theta_pm(a, c, p, ctx) * theta_pm(d, b, p, ctx) / (theta_pm(a, b, p, ctx) * theta_pm(d, c, p, ctx))
    ratio = (efac_pm(c, b, n + 1, ctx, q=q) * efac_pm(d, a, n + 1, ctx, q=r)
             / (efac_pm(c, a, n + 1, ctx, q=q) * efac_pm(d, b, n + 1, ctx, q=r)))
    rhs = pref * (1 - ratio)
    return compare(sum(terms), rhs, ctx, max(max(map(abs, terms)), abs(pref), abs(pref * ratio)),
                   witness=dict(a=a, b=b, c=c, d=d, q=q, r=r, n=n), label="bibasic")


def kronecker_check(c, d, q, r, n, ctx: EllipticContext = DEFAULT):
    """Bibasic sum evaluating to the Kronecker delta at n = 0."""
    terms = []
    for k in range(n + 1):
        t = (_bibasic_weight(c, d, q, r, k, ctx)
             * efac_multi([r ** (-n), r**n * d * d], k, ctx, q=r) * efac_pm(c, d, k, ctx, q=q)
             / (efac_multi([r, r * d * d], k, ctx, q=r)
                * efac_multi([q * r**n * c * d, q * r ** (-n) * c / d], k, ctx, q=q)) * q**k)
        terms.append(t)
    return compare(sum(terms), 1.0 if n == 0 else 0.0, ctx, max(map(abs, terms)),
                   witness=dict(c=c, d=d, q=q, r=r, n=n), label="kronecker delta")


def warnaar_sides(a, b, c, n, ctx: EllipticContext = DEFAULT):
    q, p = ctx.q, ctx.p
    q2 = q * q
    d = a * a * q ** (2 * n + 1) / c
    ta = theta(a, p, ctx)
    terms = []
    for k in range(n + 1):
        t = (theta(a * q ** (3 * k), p, ctx) / ta
             * efac_multi([a, b, q / b], k, ctx) * efac_multi([c, d, q ** (-2 * n)], k, ctx, q=q2)
             / (efac_multi([q2, a * q2 / b, a * b * q], k, ctx, q=q2)
                * efac_multi([a * q / c, a * q / d, a * q ** (1 + 2 * n)], k, ctx)) * q**k)
        terms.append(t)
    rhs = (efac(a * q, 2 * n, ctx) * efac_multi([a * b * q / c, a * q2 / (b * c)], n, ctx, q=q2)
           / (efac(a * q / c, 2 * n, ctx) * efac_multi([a * b * q, a * q2 / b], n, ctx, q=q2)))
    return Scaled(sum(terms), max(map(abs, terms))), rhs


def warnaar_quadratic(a, b, c, n, ctx: EllipticContext = DEFAULT):
    """Quadratic summation mixing bases q and q^2 (d solved from cd = a^2 q^{2n+1})."""
    lhs, rhs = warnaar_sides(a, b, c, n, ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, b=b, c=c, n=n), label="warnaar quadratic")


def minton_sides(a, b, c_list, m_list, ctx: EllipticContext = DEFAULT):
    q = ctx.q
    n = sum(m_list)
    params = [b, a / b, q ** (-n)]
    params += [c * q**m for c, m in zip(c_list, m_list)]
    params += [a * q / c for c in c_list]
    lhs = v_sum(a, params, n, ctx)
    rhs = efac_ratio([q, a * q], [a * q / b, b * q], n, ctx)
    for c, m in zip(c_list, m_list):
        rhs *= efac_ratio([c / b, b * c / a], [c, c / a], m, ctx)
    return lhs, rhs


def minton_sum(a, b, c_list, m_list, ctx: EllipticContext = DEFAULT):
    """Very-well-poised sum extending Minton's summation; n = sum of m_list."""
    if any(m < 0 for m in m_list) or len(c_list) != len(m_list):
        raise DomainError("need matching c_list and nonnegative m_list")
    lhs, rhs = minton_sides(a, b, c_list, m_list, ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, b=b, c=list(c_list), m=list(m_list)), label="minton")


def well_poised_term(x_list, k, z, ctx: EllipticContext = DEFAULT):
    """Term k of sum (x0 x_1, ..., x0 x_{m+1})_k / (x0/x_1, ..., x0/x_{m+1})_k z^k."""
    x0 = x_list[0]
    rest = x_list[1:]
    return efac_ratio([x0 * x for x in rest], [x0 / x for x in rest], k, ctx) * z**k


def total_ellipticity_check(x_list, alpha_list, k, z, ctx: EllipticContext = DEFAULT):
    """Term k is unchanged by x_j -> p^{alpha_j} x_j when sum_{j>=1} alpha_j = 0.

    The last entry of x_list is replaced so that x_1^2 ... x_{m+1}^2 = 1.
    """
    if sum(alpha_list[1:]) != 0:
        raise DomainError("need alpha_1 + ... + alpha_{m+1} = 0")
    xs = list(x_list)
    xs[-1] = 1 / _prod(xs[1:-1])
    p = ctx.p
    before = well_poised_term(xs, k, z, ctx)
    after = well_poised_term([x * p**al for x, al in zip(xs, alpha_list)], k, z, ctx)
    return compare(before, after, ctx, witness=dict(x=xs, alpha=list(alpha_list), k=k), label="total ellipticity")


def inversion_matrices(ys, zs, ctx: EllipticContext = DEFAULT):
    """The lower-triangular pair A, B built from theta products; B is the inverse of A."""
    p = ctx.p
    size = len(ys)
    A = np.zeros((size, size), dtype=complex)
    B = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(i + 1):
            A[i, j] = (_prod(theta_pm(ys[j], zs[k], p, ctx) for k in range(j, i))
                       / _prod(theta_pm(ys[j], ys[k], p, ctx) for k in range(j + 1, i + 1)))
            B[i, j] = (ys[i] * theta_pm(ys[j], zs[j], p, ctx)
                       * _prod(theta_pm(ys[i], zs[k], p, ctx) for k in range(j + 1, i + 1))
                       / (ys[j] * theta_pm(ys[i], zs[i], p, ctx)
                          * _prod(theta_pm(ys[i], ys[k], p, ctx) for k in range(j, i))))
    return A, B


def matrix_inversion_check(ys, zs, ctx: EllipticContext = DEFAULT):
    A, B = inversion_matrices(ys, zs, ctx)
    eye = np.eye(len(ys))
    scale = float(max((np.abs(A) @ np.abs(B)).max(), (np.abs(B) @ np.abs(A)).max()))
    res = float(max(np.abs(A @ B - eye).max(), np.abs(B @ A - eye).max()))
    return relative_residual(res, 0, scale, ctx, witness=dict(y=list(ys), z=list(zs)), label="matrix inversion")


# ---------------------------------------------------------------- suites

def _retry(fn, rng, tries=20):
    last = None
    for _ in range(tries):
        try:
            return fn(rng)
        except EllipticError as exc:
            last = exc
    raise DegenerateError(f"no nondegenerate draw after {tries} tries: {last}")


def telescoping_suite(ctx: EllipticContext = DEFAULT, rng=None, q=0.3, r=0.45):
    rng = ctx.rng("telescoping_suite") if rng is None else rng
    results = []
    for _ in range(4):
        a, b, c, d = (random_points(rng, 8) for _ in range(4))
        results.append(telescoping_check(a, b, c, d, ctx))
        results.append(telescoping_rational_check(a, b, c, d, ctx))
        aX, bX = random_point(rng), random_point(rng)
        X = [[_x(v, aX, bX, ctx) for v in seq] for seq in (a, b, c, d)]
        results.append(telescoping_rational_check(*X, ctx))
    for n in range(6):
        a, b, c, d = random_points(rng, 4)
        results.append(bibasic_check(a, b, c, d, q, r, n, ctx))
    for n in range(5):
        c, d = random_points(rng, 2)
        results.append(kronecker_check(c, d, q, r, n, ctx))
    return worst(results, "telescoping")


def _x(v, a, b, ctx):
    from .toolkit import x_generator
    return x_generator(v, a, b, ctx)
