"""The theta function theta(x;p) = (x;p)_inf (p/x;p)_inf and its companions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import DEFAULT, DomainError, EllipticContext, binom2

# head factors are multiplied out until |a p^N| drops below this,
# after which a few terms of the log series finish the job
_TAIL_SWITCH = 1e-3


@dataclass(frozen=True)
class ThetaProductPlan:
    n_head: int
    n_tail: int
    tail_bound: float


def _check_nome(p):
    if abs(p) >= 1:
        raise DomainError("nome out of range: need |p| < 1")


def product_plan(a, p, ctx: EllipticContext = DEFAULT) -> ThetaProductPlan:
    """Truncation plan for (a;p)_inf: head length and number of tail-series terms."""
    _check_nome(p)
    ap, ra = abs(p), abs(a)
    if ra == 0 or ap == 0:
        return ThetaProductPlan(1, 0, 0.0)
    n = 0
    while ra * ap**n >= _TAIL_SWITCH:
        n += 1
    t = ra * ap**n
    # sum_{m > M} t^m / (m |1 - p^m|) <= t^(M+1) / ((M+1)(1-|p|)(1-t))
    m = 0
    while True:
        bound = t ** (m + 1) / ((m + 1) * (1 - ap) * (1 - t))
        if bound <= ctx.eps_trunc * 1e-2:
            break
        m += 1
    return ThetaProductPlan(n, m, bound)


def _is_power(x, p, eps, nonpositive_only=False):
    """True when x = p^k within relative eps for some integer k (k <= 0 if asked)."""
    lp = math.log(abs(p))
    k = round(math.log(abs(x)) / lp)
    if nonpositive_only and k > 0:
        return False
    return abs(x / p**k - 1) <= eps


def qpochhammer_inf(a, p, ctx: EllipticContext = DEFAULT):
    """(a;p)_inf = prod_{k>=0} (1 - a p^k)."""
    if isinstance(a, np.ndarray):
        return _qpoch_array(a, p, ctx)
    a, p = complex(a), complex(p)
    _check_nome(p)
    if a == 0:
        return 1 + 0j
    if p == 0:
        return 1 - a
    if abs(a) >= 1 - 1e-3 and _is_power(a, p, ctx.eps_trunc, nonpositive_only=True):
        return 0j
    plan = product_plan(a, p, ctx)
    prod = 1 + 0j
    t = a
    for _ in range(plan.n_head):
        prod *= 1 - t
        t *= p
    s = 0j
    tm = 1 + 0j
    pm = 1 + 0j
    for m in range(1, plan.n_tail + 1):
        tm *= t
        pm *= p
        s += tm / (m * (1 - pm))
    return prod * cmath.exp(-s)


def _qpoch_array(a, p, ctx):
    a = np.asarray(a, dtype=complex)
    p = complex(p)
    _check_nome(p)
    if p == 0:
        return 1 - a
    amax = float(np.abs(a).max()) if a.size else 0.0
    if amax == 0:
        return np.ones_like(a)
    plan = product_plan(amax, p, ctx)
    prod = np.ones_like(a)
    t = a.copy()
    for _ in range(plan.n_head):
        prod *= 1 - t
        t *= p
    s = np.zeros_like(a)
    tm = np.ones_like(a)
    pm = 1 + 0j
    for m in range(1, plan.n_tail + 1):
        tm *= t
        pm *= p
        s += tm / (m * (1 - pm))
    return prod * np.exp(-s)


def theta(x, p, ctx: EllipticContext = DEFAULT):
    """theta(x;p) = (x;p)_inf (p/x;p)_inf, with exact zeros on x in p^Z."""
    if isinstance(x, np.ndarray):
        if np.any(x == 0):
            raise DomainError("theta argument zero")
        return _qpoch_array(x, p, ctx) * _qpoch_array(p / x, p, ctx)
    x, p = complex(x), complex(p)
    if x == 0:
        raise DomainError("theta argument zero")
    _check_nome(p)
    if p == 0:
        return 1 - x
    if _is_power(x, p, ctx.eps_trunc):
        return 0j
    return qpochhammer_inf(x, p, ctx) * qpochhammer_inf(p / x, p, ctx)


def theta_series(x, p, ctx: EllipticContext = DEFAULT):
    """theta(x;p) through the triple product series, divided by (p;p)_inf."""
    x, p = complex(x), complex(p)
    if x == 0:
        raise DomainError("theta argument zero")
    _check_nome(p)
    if p == 0:
        return 1 - x
    lp, lx = math.log(abs(p)), math.log(abs(x))
    # past both vertices the log-magnitudes of the terms decrease monotonically
    n_vertex = abs(lx / lp) + 1
    total = 1 + 0j
    big = 1.0
    n = 1
    while True:
        tpos = (-1) ** n * p ** binom2(n) * x**n
        tneg = (-1) ** n * p ** binom2(n + 1) * x ** (-n)
        total += tpos + tneg
        big = max(big, abs(tpos), abs(tneg))
        if n > n_vertex and max(abs(tpos), abs(tneg)) < ctx.eps_trunc * 1e-2 * big:
            break
        n += 1
    return total / qpochhammer_inf(p, p, ctx)


def theta_multi(args, p, ctx: EllipticContext = DEFAULT):
    out = 1 + 0j
    for a in args:
        out = out * theta(a, p, ctx)
    return out


def theta_pm(a, x, p, ctx: EllipticContext = DEFAULT):
    """theta(a x^{+-}; p) = theta(a x;p) theta(a/x;p)."""
    return theta(a * x, p, ctx) * theta(a / x, p, ctx)


def quasi_shift(x, p, k: int, ctx: EllipticContext = DEFAULT):
    """Predicted value of theta(p^k x; p) from theta(x; p)."""
    x, p = complex(x), complex(p)
    if x == 0:
        raise DomainError("theta argument zero")
    return (-1) ** k * p ** (-binom2(k)) * x ** (-k) * theta(x, p, ctx)


def theta_scaled(x, p, ctx: EllipticContext = DEFAULT) -> tuple[complex, float]:
    """(m, L) with theta(x;p) = m exp(L) and |m| of order one.

    The argument is reduced to |p| < |y| <= 1 with x = p^k y, so that
    arguments far outside the unit annulus, whose theta values overflow a
    double, can still enter products and quotients.
    """
    x, p = complex(x), complex(p)
    if x == 0:
        raise DomainError("theta argument zero")
    _check_nome(p)
    if p == 0:
        return 1 - x, 0.0
    lp = math.log(abs(p))
    k = math.floor(math.log(abs(x)) / lp)
    if k == 0:
        return theta(x, p, ctx), 0.0
    y = x / p**k
    ly = math.log(abs(y))
    phase = (p / abs(p)) ** (-binom2(k)) * (y / abs(y)) ** (-k)
    return (-1) ** k * phase * theta(y, p, ctx), -binom2(k) * lp - k * ly


def theta_ratio_scaled(nums, dens, p, ctx: EllipticContext = DEFAULT) -> tuple[complex, float]:
    """prod theta(nums) / prod theta(dens) as (m, L), meaning m exp(L)."""
    m, L = 1 + 0j, 0.0
    for x in nums:
        mx, lx = theta_scaled(x, p, ctx)
        if mx == 0:
            return 0j, 0.0
        m, L = m * mx, L + lx
    for x in dens:
        mx, lx = theta_scaled(x, p, ctx)
        if mx == 0:
            raise DomainError(f"theta vanishes in a denominator at {x}")
        m, L = m / mx, L - lx
    return m, L


def unscale(m, L) -> complex:
    """m exp(L) as a plain complex; DomainError if it leaves the double range."""
    if m == 0:
        return 0j
    if L + math.log(abs(m)) > 709.0:
        raise DomainError("value outside double range")
    return m * math.exp(L) if L > -745.0 else 0j


def theta_ratio(nums, dens, p, ctx: EllipticContext = DEFAULT):
    """prod theta(nums) / prod theta(dens), formed without overflowing the factors."""
    return unscale(*theta_ratio_scaled(nums, dens, p, ctx))
