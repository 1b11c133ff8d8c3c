"""Elliptic biorthogonal rational functions r_k and their discrete
biorthogonality on the lattice x = a q^j."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT,
    EllipticContext,
    EllipticError,
    DegenerateError,
    Scaled,
    fsum_complex,
    random_point,
    relative_residual,
    worst,
)
from .series import v_sum
from .theta import theta
from .toolkit import efac, efac_multi, x_generator


def r_fn(k: int, x, params, ctx: EllipticContext = DEFAULT):
    """r_k(x; a, b, c, d, e, f) as a terminating 12V11 sum.

    The function is even in x, i.e. a rational function of X(x) for any
    generator X; it is evaluated directly in the variable x.
    """
    a, b, c, d, e, f = params
    q = ctx.q
    pref = efac_multi([a * b, a * c, a * d, 1 / (a * f)], k, ctx)
    den = efac(a * q / e, k, ctx)
    if den == 0:
        raise DegenerateError("denominator zero in r_k prefactor")
    pref /= den
    vs = v_sum(a / e, [a * x, a / x, q / (b * e), q / (c * e), q / (d * e), q**k / (e * f), q ** (-k)], k, ctx)
    return Scaled(pref * vs, abs(pref) * vs.scale)


@dataclass
class BiorthogonalFamily:
    """Parameters with ab = q^-n and abcdef = q; b and f are derived from (a, c, d, e, n)."""

    a: complex
    c: complex
    d: complex
    e: complex
    n: int
    ctx: EllipticContext = DEFAULT
    x_pair: tuple = (0.5 + 0.3j, 1.2 - 0.4j)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def b(self):
        return self.ctx.q ** (-self.n) / self.a

    @property
    def f(self):
        return self.ctx.q ** (self.n + 1) / (self.c * self.d * self.e)

    @property
    def params(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def dual_params(self):
        return (self.a, self.b, self.c, self.d, self.f, self.e)

    def nodes(self):
        q = self.ctx.q
        return [self.a * q**j for j in range(self.n + 1)]

    def node_values(self):
        """X(a q^j) for the pinned generator; informational only."""
        aX, bX = self.x_pair
        return [x_generator(x, aX, bX, self.ctx) for x in self.nodes()]

    def weight(self, j: int):
        key = ("w", j)
        if key not in self._cache:
            a, b, c, d, e, f = self.params
            ctx, q, p = self.ctx, self.ctx.q, self.ctx.p
            num = [a * a, a * b, a * c, a * d, a * e, a * f]
            den = [q, a * q / b, a * q / c, a * q / d, a * q / e, a * q / f]
            w = theta(a * a * q ** (2 * j), p, ctx) / theta(a * a, p, ctx) * q**j
            # factor by factor: with b or f far from 1 the two products overflow separately
            for i in range(j):
                for x, y in zip(num, den):
                    w *= theta(x * q**i, p, ctx) / theta(y * q**i, p, ctx)
            self._cache[key] = w
        return self._cache[key]

    def norm(self, k: int):
        """The closed-form diagonal entry C_k.

        The n-dependent denominator carries (q/acde)_n; at k = 0 this is what
        the balanced 10V9 summation of sum_j w_j gives.
        """
        a, b, c, d, e, f = self.params
        ctx, q, p, n = self.ctx, self.ctx.q, self.ctx.p, self.n
        out = (efac_multi([a * a * q, q / (c * d), q / (c * e), q / (d * e)], n, ctx)
               / efac_multi([a * q / c, a * q / d, a * q / e, q / (a * c * d * e)], n, ctx))
        out *= (efac_multi([q, a * b, a * c, a * d, b * c, b * d, c * d], k, ctx)
                / efac(1 / (e * f), k, ctx))
        out *= theta(1 / (e * f), p, ctx) / theta(q ** (2 * k) / (e * f), p, ctx) * q ** (-k)
        return out


def gram_matrix(family: BiorthogonalFamily, ctx: EllipticContext | None = None):
    """G[k, l] = sum_j w_j r_k(a q^j) r~_l(a q^j), with r~ the e <-> f swapped family.

    Returns (G, S) where S[k, l] is the largest term magnitude behind G[k, l].
    """
    ctx = family.ctx if ctx is None else ctx
    n = family.n
    nodes = family.nodes()
    w = [family.weight(j) for j in range(n + 1)]
    R = [[r_fn(k, x, family.params, ctx) for x in nodes] for k in range(n + 1)]
    Rt = [[r_fn(l, x, family.dual_params, ctx) for x in nodes] for l in range(n + 1)]
    G = np.zeros((n + 1, n + 1), dtype=complex)
    S = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        for l in range(n + 1):
            terms = [w[j] * R[k][j] * Rt[l][j] for j in range(n + 1)]
            G[k, l] = fsum_complex(terms)
            S[k, l] = max(abs(w[j]) * R[k][j].scale * Rt[l][j].scale for j in range(n + 1))
    return G, S


def biorthogonality_check(family: BiorthogonalFamily, ctx: EllipticContext | None = None):
    """Worst of the off-diagonal entries (against 0) and diagonal entries (against C_k)."""
    ctx = family.ctx if ctx is None else ctx
    G, S = gram_matrix(family, ctx)
    results = []
    for k in range(family.n + 1):
        for l in range(family.n + 1):
            target = family.norm(k) if k == l else 0
            results.append(relative_residual(G[k, l], target, S[k, l], ctx,
                                             witness=dict(k=k, l=l, n=family.n), label="biorthogonality"))
    return worst(results, f"biorthogonality n={family.n}")


def draw_family(n: int, ctx: EllipticContext, rng, tries: int = 20) -> BiorthogonalFamily:
    """A family whose weights, norms and r_k evaluate without degeneracy."""
    last = None
    for _ in range(tries):
        a, c, d, e = (random_point(rng, 0.5, 1.5) for _ in range(4))
        fam = BiorthogonalFamily(a, c, d, e, n, ctx, (random_point(rng), random_point(rng)))
        try:
            for j in range(n + 1):
                fam.weight(j)
            for k in range(n + 1):
                fam.norm(k)
            return fam
        except (EllipticError, ZeroDivisionError) as exc:
            last = exc
    raise DegenerateError(f"no admissible family after {tries} draws: {last}")
