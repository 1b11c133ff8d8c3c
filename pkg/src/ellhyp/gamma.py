"""The elliptic gamma function Gamma(x; p, q) and its functional equations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT,
    DomainError,
    EllipticContext,
    PoleError,
    circle_integral,
    compare,
    random_point,
    relative_residual,
    worst,
)
from .theta import qpochhammer_inf, theta
from .toolkit import efac

# lattice ranks scanned when looking for poles and zeros
_LATTICE_RANK = 64


@dataclass(frozen=True)
class GammaGridPlan:
    j_max: int
    k_max: int
    tail_bound: float


def grid_plan(x, p, q, ctx: EllipticContext = DEFAULT) -> GammaGridPlan:
    """Number of outer factors in j so that the remaining j-tail is below eps_trunc.

    The inner index k is handled by (.;q)_inf, whose own truncation is
    planned in the theta module; k_max reports the rank it uses for the
    first outer factor.
    """
    ap, aq = abs(p), abs(q)
    if ap >= 1 or aq >= 1:
        raise DomainError("nome out of range: need |p|, |q| < 1")
    big = max(abs(x), abs(p * q / x)) if x != 0 else 0.0
    if ap == 0 or big == 0:
        return GammaGridPlan(1, _k_rank(big, aq, ctx), 0.0)
    j = 1
    # |log of the j-th factor| <= 2 |p|^j big / (1 - |q|) once that is < 1/2
    while True:
        bound = 2 * big * ap**j / ((1 - aq) * (1 - ap))
        if bound <= ctx.eps_trunc * 1e-2:
            break
        j += 1
    return GammaGridPlan(j, _k_rank(big, aq, ctx), bound)


def _k_rank(big, aq, ctx):
    if aq == 0 or big == 0:
        return 1
    k = 1
    while big * aq**k / (1 - aq) > ctx.eps_trunc * 1e-2:
        k += 1
    return k


def _lattice_hit(y, p, q, eps):
    """True when y = p^j q^k for some 0 <= j, k <= rank, within relative eps."""
    if p == 0 or q == 0:
        base = q if p == 0 else p
        if base == 0:
            return abs(y - 1) <= eps
        lb = math.log(abs(base))
        k = round(math.log(abs(y)) / lb)
        return 0 <= k <= _LATTICE_RANK and abs(y / base**k - 1) <= eps
    lq = math.log(abs(q))
    for j in range(_LATTICE_RANK + 1):
        z = y / p**j
        k = round(math.log(abs(z)) / lq)
        if 0 <= k <= _LATTICE_RANK and abs(z / q**k - 1) <= eps:
            return True
    return False


def egamma(x, p=None, q=None, ctx: EllipticContext = DEFAULT):
    """Gamma(x;p,q) = prod_{j,k>=0} (1 - p^{j+1} q^{k+1}/x) / (1 - p^j q^k x).

    p or q may be 0, in which case the product degenerates to a single
    infinite q-Pochhammer symbol. Scalars are checked for poles (raising
    PoleError) and zeros (returning an exact 0); arrays are not.
    """
    p = ctx.p if p is None else complex(p)
    q = ctx.q if q is None else complex(q)
    if abs(p) >= 1 or abs(q) >= 1:
        raise DomainError("nome out of range: need |p|, |q| < 1")
    if isinstance(x, np.ndarray):
        x = np.asarray(x, dtype=complex)
        if np.any(x == 0):
            raise DomainError("gamma argument zero")
        plan = grid_plan(float(np.abs(x).max()), p, q, ctx)
        return _egamma_product(x, p, q, plan, ctx)
    x = complex(x)
    if x == 0:
        raise DomainError("gamma argument zero")
    if _lattice_hit(1 / x, p, q, ctx.eps_trunc):
        raise PoleError(f"gamma pole at x={x}")
    if p != 0 and q != 0 and _lattice_hit(x / (p * q), p, q, ctx.eps_trunc):
        return 0j
    return _egamma_product(x, p, q, grid_plan(x, p, q, ctx), ctx)


def _egamma_product(x, p, q, plan, ctx):
    out = 1.0
    pj = 1 + 0j
    for _ in range(plan.j_max):
        out = out * qpochhammer_inf(pj * p * q / x, q, ctx) / qpochhammer_inf(pj * x, q, ctx)
        pj *= p
        if pj == 0:
            break
    return out


def egamma_multi(args, p=None, q=None, ctx: EllipticContext = DEFAULT):
    out = 1 + 0j
    for a in args:
        out = out * egamma(a, p, q, ctx)
    return out


def efac_via_gamma(a, n: int, ctx: EllipticContext = DEFAULT):
    """(a;q,p)_n against Gamma(q^n a)/Gamma(a)."""
    if n > 12:
        raise DomainError("n must be at most 12")
    q = ctx.q
    lhs = efac(a, n, ctx)
    rhs = egamma(q**n * a, ctx=ctx) / egamma(a, ctx=ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, n=n), label="efac via gamma")


def gamma_residue_constant(p, q, ctx: EllipticContext = DEFAULT):
    """1/((p;p)_inf (q;q)_inf), the residue of Gamma(t/x) at x = t divided by t."""
    return 1 / (qpochhammer_inf(p, p, ctx) * qpochhammer_inf(q, q, ctx))


def numerical_residue_constant(p, q, t0=0.7 + 0.2j, ctx: EllipticContext = DEFAULT):
    """Small-circle quadrature of Gamma(t0/x) around x = t0, divided by t0."""
    radius = 0.1 * abs(t0) * min(1 - abs(p), 1 - abs(q), 0.5)

    def f(x):
        return egamma(t0 / x, p, q, ctx)
    return complex(circle_integral(f, t0, radius, nodes=32, ctx=ctx)) / t0


def residue_check(p, q, t0=0.7 + 0.2j, ctx: EllipticContext = DEFAULT):
    num = numerical_residue_constant(p, q, t0, ctx)
    exact = gamma_residue_constant(p, q, ctx)
    return relative_residual(num, exact, 0.0, ctx.with_(tol=max(ctx.tol, 1e-8)),
                             witness=dict(p=p, q=q, t0=t0), label="gamma residue")


def inversion_check(x, ctx: EllipticContext = DEFAULT):
    p, q = ctx.p, ctx.q
    return compare(egamma(x, ctx=ctx) * egamma(p * q / x, ctx=ctx), 1, ctx, witness=dict(x=x), label="gamma inversion")


def shift_check(x, ctx: EllipticContext = DEFAULT, which: str = "q"):
    """Gamma(qx) = theta(x;p) Gamma(x), or with p and q exchanged."""
    p, q = ctx.p, ctx.q
    s, other = (q, p) if which == "q" else (p, q)
    g = egamma(x, ctx=ctx)
    return compare(egamma(s * x, ctx=ctx), theta(x, other, ctx) * g, ctx, witness=dict(x=x, shift=which),
                   label=f"gamma {which}-shift")


def symmetry_check(x, ctx: EllipticContext = DEFAULT):
    p, q = ctx.p, ctx.q
    return compare(egamma(x, p, q, ctx), egamma(x, q, p, ctx), ctx, witness=dict(x=x), label="gamma p<->q")


def reflection_pair_check(x, ctx: EllipticContext = DEFAULT):
    """G(x) = Gamma(x) Gamma(q/x) satisfies G(qx) = -x G(x)."""
    q = ctx.q

    def G(y):
        return egamma(y, ctx=ctx) * egamma(q / y, ctx=ctx)
    return compare(G(q * x), -x * G(x), ctx, witness=dict(x=x), label="gamma reflection pair")


def gamma_suite(ctx: EllipticContext = DEFAULT, draws: int = 32, rng=None):
    rng = ctx.rng("gamma") if rng is None else rng
    results = []
    for _ in range(draws):
        x = random_point(rng, 0.4, 1.4)
        results += [inversion_check(x, ctx), shift_check(x, ctx, "q"), shift_check(x, ctx, "p"),
                    symmetry_check(x, ctx), reflection_pair_check(x, ctx)]
    for n in (0, 3, 7, 12):
        results.append(efac_via_gamma(random_point(rng, 0.3, 0.9), n, ctx))
    results.append(residue_check(ctx.p, ctx.q, ctx=ctx))
    return worst(results, "gamma")
