"""Baxter's elliptic SOS model: Boltzmann weights, the dynamical R-operator,
Yang-Baxter and unitarity checks, and fused weights.

Heights are complex exponents (offset plus integer); the multiplicative
height q^a only appears inside theta arguments, through qpow.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT,
    DegenerateError,
    DomainError,
    EllipticContext,
    Scaled,
    compare,
    random_point,
    relative_residual,
    worst,
)
from .series import connection_coefficient, connection_double_sum
from .theta import theta
from .toolkit import efac_pm

SIGNS = (1, -1)


def qpow(s, ctx: EllipticContext = DEFAULT):
    """q^s on the principal branch of log q."""
    return cmath.exp(s * cmath.log(ctx.q))


def step(a, b) -> int:
    """The integer b - a; heights on different integer cosets raise."""
    d = b - a
    n = round(d.real)
    if abs(d - n) > 1e-9:
        raise DomainError(f"heights {a} and {b} differ by a non-integer")
    return n


@dataclass(frozen=True)
class SosWeightKey:
    lam: complex
    k: int
    l: int
    m: int
    n: int
    u: complex

    @property
    def admissible(self):
        return all(s in SIGNS for s in (self.k, self.l, self.m, self.n)) and self.k + self.l == self.m + self.n


def _ratio(num, den, ctx):
    p = ctx.p
    top = 1 + 0j
    for z in num:
        top *= theta(z, p, ctx)
    bot = 1 + 0j
    for z in den:
        bot *= theta(z, p, ctx)
    if bot == 0:
        raise DegenerateError("weight pole")
    return top / bot


def sos_weight(key: SosWeightKey, ctx: EllipticContext = DEFAULT):
    """R^{mn}_{kl}(lam|u); inadmissible index combinations give 0."""
    if not key.admissible:
        return 0j
    lam, u, q = key.lam, key.u, ctx.q
    k, l, m, n = key.k, key.l, key.m, key.n
    if k == l:
        return 1 + 0j
    ql, qml = qpow(lam, ctx), qpow(-lam, ctx)
    if (m, n) == (k, l):
        if m == 1:
            return _ratio([q * qml, u], [qml, u * q], ctx)
        return _ratio([q * ql, u], [ql, u * q], ctx)
    if m == 1:
        return _ratio([q, qml * u], [qml, u * q], ctx)
    return _ratio([q, ql * u], [ql, u * q], ctx)


def R(lam, k, l, m, n, u, ctx: EllipticContext = DEFAULT):
    """R^{mn}_{kl}(lam|u) with positional indices."""
    return sos_weight(SosWeightKey(lam, k, l, m, n, u), ctx)


def W(a, b, c, d, u, ctx: EllipticContext = DEFAULT):
    """W(a b; c d | u) = R^{c-a, d-c}_{d-b, b-a}(a|u)."""
    return R(a, step(b, d), step(a, b), step(a, c), step(c, d), u, ctx)


def symmetry_check(lam, u, ctx: EllipticContext = DEFAULT):
    """Both symmetries of the weights over all admissible index tuples."""
    results = []
    for k, l, m, n in itertools.product(SIGNS, repeat=4):
        if k + l != m + n:
            continue
        w = R(lam, k, l, m, n, u, ctx)
        results.append(compare(w, R(-lam, -k, -l, -m, -n, u, ctx), ctx, witness=(k, l, m, n), label="sign flip"))
        results.append(compare(w, R(-lam - k - l, l, k, n, m, u, ctx), ctx, witness=(k, l, m, n), label="transpose"))
    return worst(results, "weight symmetries")


def ybe_sides(i, j, k, l, m, n, lam, u, v, w, ctx: EllipticContext = DEFAULT):
    """Both sides of the dynamical Yang-Baxter equation in index form, with term scale."""
    lhs, rhs, scale = 0j, 0j, 0.0
    for x in SIGNS:
        t = (R(lam + n, l, m, l + m - x, x, u / v, ctx)
             * R(lam, l + m - x, n, i, j + k - x, u / w, ctx)
             * R(lam + i, x, j + k - x, j, k, v / w, ctx))
        lhs += t
        scale = max(scale, abs(t))
        t = (R(lam, m, n, x, m + n - x, v / w, ctx)
             * R(lam + x, l, m + n - x, i + j - x, k, u / w, ctx)
             * R(lam, i + j - x, x, i, j, u / v, ctx))
        rhs += t
        scale = max(scale, abs(t))
    return lhs, rhs, scale


def ybe_tuples():
    return [t for t in itertools.product(SIGNS, repeat=6) if t[0] + t[1] + t[2] == t[3] + t[4] + t[5]]


def yang_baxter_check(lam, u, v, w, ctx: EllipticContext = DEFAULT):
    """Worst residual over the 20 sign tuples."""
    results = []
    for tup in ybe_tuples():
        lhs, rhs, scale = ybe_sides(*tup, lam, u, v, w, ctx)
        results.append(relative_residual(lhs, rhs, scale, ctx, witness=tup, label="yang-baxter"))
    return worst(results, "yang-baxter")


def four_term_sides(lam, u, v, w, ctx: EllipticContext = DEFAULT):
    """The four-term case written directly in theta functions."""
    p, q = ctx.p, ctx.q
    Q = lambda s: qpow(s, ctx)

    def T(*zs):
        out = 1 + 0j
        for z in zs:
            out *= theta(z, p, ctx)
        return out
    tq3 = theta(q, p, ctx) ** 3
    lhs = (tq3 * T(Q(lam + 1) * u / v, Q(-lam) * u / w, Q(lam + 1) * v / w)
           / T(Q(lam + 1), u * q / v, Q(-lam), u * q / w, Q(lam + 1), v * q / w)
           + T(Q(-lam), u / v, Q(lam + 2), v / w) / T(Q(-lam - 1), u * q / v, Q(lam + 1), v * q / w))
    rhs = (tq3 * T(Q(-lam) * v / w, Q(lam + 1) * u / w, Q(-lam) * u / v)
           / T(Q(-lam), v * q / w, Q(lam + 1), u * q / w, Q(-lam), u * q / v)
           + T(Q(lam + 1), v / w, Q(1 - lam), u / v) / T(Q(lam), v * q / w, Q(-lam), u * q / v))
    return lhs, rhs


# -- operator form on V (x) V (x) V, basis e_{+1}, e_{-1}

_IDX = {1: 0, -1: 1}


def r_matrix(lam, u, ctx: EllipticContext = DEFAULT):
    """4x4 matrix of R(lam|u): e_k (x) e_l -> sum R^{kl}_{mn} e_m (x) e_n."""
    M = np.zeros((4, 4), dtype=complex)
    for k, l, m, n in itertools.product(SIGNS, repeat=4):
        if k + l == m + n:
            M[2 * _IDX[m] + _IDX[n], 2 * _IDX[k] + _IDX[l]] = R(lam, m, n, k, l, u, ctx)
    return M


def _embed(lam, u, pair, shift_from, ctx):
    """R acting on the tensor factors `pair` of V^{(x)3}, with lam shifted by
    the grading of factor `shift_from` (or unshifted if None)."""
    op = np.zeros((8, 8), dtype=complex)
    basis = list(itertools.product(SIGNS, repeat=3))
    pos = {b: i for i, b in enumerate(basis)}
    cache = {}
    for b in basis:
        s = b[shift_from] if shift_from is not None else 0
        if s not in cache:
            cache[s] = r_matrix(lam + s, u, ctx)
        Rm = cache[s]
        i, j = pair
        col = 2 * _IDX[b[i]] + _IDX[b[j]]
        for m, n in itertools.product(SIGNS, repeat=2):
            out = list(b)
            out[i], out[j] = m, n
            op[pos[tuple(out)], pos[b]] += Rm[2 * _IDX[m] + _IDX[n], col]
    return op


def operator_sides(lam, u, v, w, ctx: EllipticContext = DEFAULT):
    """R12(lam+h3|u,v) R13(lam|u,w) R23(lam+h1|v,w) and R23(lam|v,w) R13(lam+h2|u,w) R12(lam|u,v)."""
    lhs = _embed(lam, u / v, (0, 1), 2, ctx) @ _embed(lam, u / w, (0, 2), None, ctx) @ _embed(lam, v / w, (1, 2), 0, ctx)
    rhs = _embed(lam, v / w, (1, 2), None, ctx) @ _embed(lam, u / w, (0, 2), 1, ctx) @ _embed(lam, u / v, (0, 1), None, ctx)
    return lhs, rhs


def operator_consistency_check(lam, u, v, w, ctx: EllipticContext = DEFAULT):
    """Operator matrix elements reproduce the index-form sides entry by entry, and agree."""
    lhs, rhs = operator_sides(lam, u, v, w, ctx)
    basis = list(itertools.product(SIGNS, repeat=3))
    pos = {b: i for i, b in enumerate(basis)}
    results = []
    for tup in ybe_tuples():
        i, j, k, l, m, n = tup
        L, Rr, scale = ybe_sides(*tup, lam, u, v, w, ctx)
        results.append(compare(lhs[pos[(l, m, n)], pos[(i, j, k)]], L, ctx, scale, witness=tup, label="operator lhs"))
        results.append(compare(rhs[pos[(l, m, n)], pos[(i, j, k)]], Rr, ctx, scale, witness=tup, label="operator rhs"))
    scale = max(float(np.abs(lhs).max()), 1.0)
    results.append(relative_residual(0, float(np.abs(lhs - rhs).max()), scale, ctx, label="operator equation"))
    return worst(results, "operator yang-baxter")


def operator_unitarity_check(lam, u, v, ctx: EllipticContext = DEFAULT):
    """R12(lam|u,v) R21(lam|v,u) = Id, with R21 = P R P for the flip P."""
    P = np.zeros((4, 4))
    for a, b in itertools.product(range(2), repeat=2):
        P[2 * b + a, 2 * a + b] = 1
    prod = r_matrix(lam, u / v, ctx) @ P @ r_matrix(lam, v / u, ctx) @ P
    scale = max(float(np.abs(r_matrix(lam, u / v, ctx)).max() * np.abs(r_matrix(lam, v / u, ctx)).max()), 1.0)
    return relative_residual(0, float(np.abs(prod - np.eye(4)).max()), scale, ctx, label="operator unitarity")


def unitarity_check(a, u, v, ctx: EllipticContext = DEFAULT):
    """sum_x W(d x; c b|u/v) W(d a; x b|v/u) = delta_{ac} for all admissible (b, c, d)."""
    results = []
    for db, dd in itertools.product(SIGNS, repeat=2):
        b, d = a + db, a + dd
        for c in {a - 2, a, a + 2}:
            if abs(step(c, d)) != 1 or abs(step(c, b)) != 1:
                continue
            terms = []
            for x in (d + 1, d - 1):
                if abs(step(x, b)) != 1:
                    continue
                terms.append(W(d, x, c, b, u / v, ctx) * W(d, a, x, b, v / u, ctx))
            lhs = sum(terms)
            target = 1 if step(a, c) == 0 else 0
            results.append(relative_residual(lhs, target, max(map(abs, terms), default=0.0), ctx,
                                             witness=dict(a=a, b=b, c=c, d=d), label="unitarity"))
    return worst(results, "unitarity")


# -- theta-function expansions

def phi(a, c, s, x, ctx: EllipticContext = DEFAULT):
    """phi(a, c|u)(x) with s a chosen square root of u."""
    e = step(a, c)
    if abs(e) != 1:
        raise DomainError("phi needs |a - c| = 1")
    z = qpow(a * e / 2, ctx) * s
    return theta(z * x, ctx.p, ctx) * theta(z / x, ctx.p, ctx) / z


def _root(s, j, ctx):
    """The square root of u q^j paired with s."""
    return s * qpow(j / 2, ctx)


def phi_path(M, a, c, s, x, path=None, ctx: EllipticContext = DEFAULT):
    """phi_M as the product phi(a,b1|uq^{1-M}) ... phi(b_{M-1},c|u) along a path."""
    diff = step(a, c)
    if abs(diff) > M or (M - diff) % 2:
        raise DomainError("inadmissible heights")
    if path is None:
        up = (M + diff) // 2
        path = [1] * up + [-1] * (M - up)
    out, h = 1 + 0j, a
    for i, e in enumerate(path):
        out *= phi(h, h + e, _root(s, i + 1 - M, ctx), x, ctx)
        h = h + e
    if abs(step(c, h)) > 0:
        raise DomainError("path does not end at c")
    return out


def phi_M(M, a, c, s, x, ctx: EllipticContext = DEFAULT):
    """Closed product formula for phi_M(a, c|u).

    The prefactor q^{(a^2 - c^2 + M^2)/4} / sqrt(u)^M is what the path
    product gives for phi as defined here.
    """
    diff = step(a, c)
    if abs(diff) > M or (M - diff) % 2:
        raise DomainError("inadmissible heights")
    n1, n2 = (M + diff) // 2, (M - diff) // 2
    out = qpow((a * a - c * c + M * M) / 4, ctx) / s**M
    out *= efac_pm(qpow((1 - M + a) / 2, ctx) * s, x, n1, ctx)
    out *= efac_pm(qpow((1 - M - a) / 2, ctx) * s, x, n2, ctx)
    return out


def path_independence_check(a, s, x, ctx: EllipticContext = DEFAULT):
    lhs = phi(a, a + 1, _root(s, -1, ctx), x, ctx) * phi(a + 1, a, s, x, ctx)
    rhs = phi(a, a - 1, _root(s, -1, ctx), x, ctx) * phi(a - 1, a, s, x, ctx)
    return compare(lhs, rhs, ctx, witness=dict(a=a, x=x), label="phi path independence")


def phi_M_check(M, a, s, x, ctx: EllipticContext = DEFAULT):
    """Closed form against every up/down path, for each admissible c."""
    results = []
    for c in [a + j for j in range(-M, M + 1, 2)]:
        closed = phi_M(M, a, c, s, x, ctx)
        diff = step(a, c)
        for path in itertools.product(SIGNS, repeat=M):
            if sum(path) != diff:
                continue
            results.append(compare(phi_path(M, a, c, s, x, list(path), ctx), closed, ctx,
                                   witness=dict(M=M, c=c, path=path), label="phi_M"))
    return worst(results, f"phi_{M}")


def expansion_check(a, s, xs, ctx: EllipticContext = DEFAULT):
    """phi(b,d|u) = sum_c W(a b; c d|u) phi(a,c|uq) for all admissible (b, d)."""
    u = s * s
    results = []
    for db in SIGNS:
        b = a + db
        for dd in SIGNS:
            d = b + dd
            for x in xs:
                terms = [W(a, b, c, d, u, ctx) * phi(a, c, _root(s, 1, ctx), x, ctx)
                         for c in (a + 1, a - 1) if abs(step(c, d)) == 1]
                results.append(compare(phi(b, d, s, x, ctx), sum(terms), ctx, max(map(abs, terms)),
                                       witness=dict(a=a, b=b, d=d, x=x), label="weight expansion"))
    return worst(results, "weight expansion")


# -- fusion

@dataclass
class FusedWeightSpec:
    M: int
    N: int
    a: complex
    b: complex
    c: complex
    d: complex
    u: complex
    e_path: tuple | None = None
    f_path: tuple | None = None

    def validate(self):
        M, N = self.M, self.N
        if M < 1 or N < 1:
            raise DomainError("multiplicities must be positive")
        for x, y, r in ((self.a, self.c, M), (self.b, self.d, M), (self.a, self.b, N), (self.c, self.d, N)):
            s = step(x, y)
            if abs(s) > r or (r - s) % 2:
                raise DomainError("inadmissible heights")


def canonical_path(start, end, length, up_first=True):
    diff = step(start, end)
    up = (length + diff) // 2
    steps = [1] * up + [-1] * (length - up)
    return tuple(steps if up_first else steps[::-1])


def _boundary(start, steps):
    out = [start]
    for e in steps:
        out.append(out[-1] + e)
    return out


def _row_paths(start, length):
    for steps in itertools.product(SIGNS, repeat=length):
        yield tuple(_boundary(start, steps))


def _crossing_arg(u, r, s, M, N, ctx):
    # q^{N-M} keeps the fused expansion exact for rectangular blocks; it is 1 when M = N
    return u * ctx.q ** (r - s + N - M)


def _row_weight(top, bottom, r, u, M, ctx):
    N = len(top) - 1
    out = 1 + 0j
    for s in range(N):
        out *= W(top[s], top[s + 1], bottom[s], bottom[s + 1], _crossing_arg(u, r, s, M, N, ctx), ctx)
        if out == 0:
            break
    return out


def _prepare(spec: FusedWeightSpec):
    spec.validate()
    M, N = spec.M, spec.N
    e_steps = spec.e_path if spec.e_path is not None else canonical_path(spec.a, spec.b, N)
    f_steps = spec.f_path if spec.f_path is not None else canonical_path(spec.b, spec.d, M)
    top = _boundary(spec.a, e_steps)
    right = _boundary(spec.b, f_steps)
    if abs(step(top[-1], spec.b)) or abs(step(right[-1], spec.d)) or len(top) != N + 1 or len(right) != M + 1:
        raise DomainError("inadmissible heights")
    return top, right


def fused_weight(spec: FusedWeightSpec, ctx: EllipticContext = DEFAULT):
    """Partition function of the M x N block by row-by-row dynamic programming.

    Row r (from the top) carries spectral parameter u q^r and column s
    carries q^s, so for square blocks the crossing in row r, column s has
    argument u q^{r-s}. Rectangular blocks get an extra q^{N-M}.
    """
    top, right = _prepare(spec)
    M, N = spec.M, spec.N
    states = {tuple(top): 1 + 0j}
    for r in range(M):
        new = {}
        for row, val in states.items():
            for lead in (row[0] + 1, row[0] - 1):
                if r + 1 == M and step(lead, spec.c) != 0:
                    continue
                for cand in _row_paths(lead, N):
                    if step(cand[-1], right[r + 1]) != 0:
                        continue
                    if any(abs(step(x, y)) != 1 for x, y in zip(row, cand)):
                        continue
                    w = _row_weight(row, cand, r, spec.u, M, ctx)
                    if w != 0:
                        new[cand] = new.get(cand, 0j) + val * w
        states = new
    return sum(states.values(), 0j)


def fused_weight_naive(spec: FusedWeightSpec, ctx: EllipticContext = DEFAULT):
    """The same partition function by enumerating every interior height."""
    top, right = _prepare(spec)
    M, N = spec.M, spec.N
    total = 0j
    # free heights: rows 1..M, columns 0..N-1 (the right column is fixed)
    free = [(r, s) for r in range(1, M + 1) for s in range(N)]
    ranges = []
    for r, s in free:
        base = spec.a + 0
        ranges.append([base + j for j in range(-(r + s), r + s + 1, 1) if (r + s - j) % 2 == 0])
    for choice in itertools.product(*ranges):
        H = [list(top)] + [[None] * (N + 1) for _ in range(M)]
        for r in range(M + 1):
            H[r][N] = right[r]
        for (r, s), h in zip(free, choice):
            H[r][s] = h
        if step(H[M][0], spec.c) != 0:
            continue
        ok = all(abs(step(H[r][s], H[r][s + 1])) == 1 for r in range(M + 1) for s in range(N)) and all(
            abs(step(H[r][s], H[r + 1][s])) == 1 for r in range(M) for s in range(N + 1))
        if not ok:
            continue
        w = 1 + 0j
        for r in range(M):
            for s in range(N):
                w *= W(H[r][s], H[r][s + 1], H[r + 1][s], H[r + 1][s + 1], _crossing_arg(spec.u, r, s, M, N, ctx), ctx)
        total += w
    return total


def _all_paths(start, end, length):
    diff = step(start, end)
    return [t for t in itertools.product(SIGNS, repeat=length) if sum(t) == diff]


def boundary_independence_check(spec: FusedWeightSpec, ctx: EllipticContext = DEFAULT):
    """Every choice of top and right boundary path gives the same partition function."""
    spec.validate()
    vals = []
    for e in _all_paths(spec.a, spec.b, spec.N):
        for f in _all_paths(spec.b, spec.d, spec.M):
            s = FusedWeightSpec(spec.M, spec.N, spec.a, spec.b, spec.c, spec.d, spec.u, e, f)
            vals.append(fused_weight(s, ctx))
    ref = vals[0]
    scale = max(abs(v) for v in vals)
    results = [relative_residual(v, ref, scale, ctx, label="boundary independence") for v in vals[1:]]
    return worst(results or [relative_residual(ref, ref, scale, ctx)], "boundary independence")


def fused_closed_form(M, N, a, b, c, d, s, ctx: EllipticContext = DEFAULT):
    """W_MN from the connection coefficient R_k^l with sqrt(u)-shifted arguments.

    For some height configurations the 12V11 form of R_k^l has a removable
    0/0 (its parameter ratios depend only on integer height differences);
    there the same coefficient is taken from the two-binomial sum.
    """
    k, l = (M + step(b, d)) // 2, (M + step(a, c)) // 2
    pref = qpow((b * b + c * c - a * a - d * d + 2 * M * N) / 4, ctx)
    args = (qpow((1 - M + b) / 2, ctx) * s, qpow((1 - M - b) / 2, ctx) * s,
            qpow((1 - M + N + a) / 2, ctx) * s, qpow((1 - M + N - a) / 2, ctx) * s)
    try:
        r = connection_coefficient(*args, M, k, l, ctx)
    except DegenerateError:
        r = connection_double_sum(*args, M, k, l, ctx)
    return Scaled(pref * r, abs(pref) * r.scale)


def fused_vs_connection(spec: FusedWeightSpec, ctx: EllipticContext = DEFAULT, s=None):
    s = cmath.sqrt(spec.u) if s is None else s
    lhs = fused_weight(spec, ctx)
    rhs = fused_closed_form(spec.M, spec.N, spec.a, spec.b, spec.c, spec.d, s, ctx)
    return compare(lhs, rhs, ctx, getattr(rhs, "scale", 0.0), witness=dict(M=spec.M, N=spec.N),
                   label="fused weight vs connection coefficient")


def _range(center, r):
    return [center + j for j in range(-r, r + 1, 2)]


def fused_or_zero(M, N, a, b, c, d, u, ctx):
    spec = FusedWeightSpec(M, N, a, b, c, d, u)
    try:
        spec.validate()
    except DomainError:
        return 0j
    return fused_weight(spec, ctx)


def fused_expansion_check(M, N, a, s, xs, ctx: EllipticContext = DEFAULT):
    """phi_M(b,d|u) = sum_c W_MN(a b; c d|u) phi_M(a,c|u q^N) for all admissible (b, d)."""
    u = s * s
    results = []
    for b in _range(a, N):
        for d in _range(b, M):
            cs = [c for c in _range(a, M) if abs(step(c, d)) <= N and (N - step(c, d)) % 2 == 0]
            ws = {c: fused_weight(FusedWeightSpec(M, N, a, b, c, d, u), ctx) for c in cs}
            for x in xs:
                terms = [ws[c] * phi_M(M, a, c, _root(s, N, ctx), x, ctx) for c in cs]
                results.append(compare(phi_M(M, b, d, s, x, ctx), sum(terms), ctx, max(map(abs, terms)),
                                       witness=dict(M=M, N=N, b=b, d=d, x=x), label="fused expansion"))
    return worst(results, f"fused expansion M={M} N={N}")


def fused_yang_baxter(M, N, P, heights, u, v, w, ctx: EllipticContext = DEFAULT):
    """Both sides of the fused Yang-Baxter equation; heights = (a, b, c, d, e, f)."""
    a, b, c, d, e, f = heights
    lhs, rhs, scale = 0j, 0j, 0.0
    for x in _range(a, M):
        t = (fused_or_zero(M, N, a, b, x, c, u / v, ctx) * fused_or_zero(M, P, f, a, e, x, u / w, ctx)
             * fused_or_zero(N, P, e, x, d, c, v / w, ctx))
        lhs += t
        scale = max(scale, abs(t))
    for x in _range(f, N):
        t = (fused_or_zero(N, P, f, a, x, b, v / w, ctx) * fused_or_zero(M, P, x, b, d, c, u / w, ctx)
             * fused_or_zero(M, N, f, x, e, d, u / v, ctx))
        rhs += t
        scale = max(scale, abs(t))
    return relative_residual(lhs, rhs, scale, ctx, witness=dict(M=M, N=N, P=P, heights=heights),
                             label="fused yang-baxter")


def draw_hexagon(M, N, P, f, rng):
    """Exterior heights with f-a in P, a-b in N, b-c in M, c-d in P, d-e in N, e-f in M."""
    for _ in range(1000):
        a = f + int(rng.choice(range(-P, P + 1, 2)))
        b = a + int(rng.choice(range(-N, N + 1, 2)))
        c = b + int(rng.choice(range(-M, M + 1, 2)))
        d = c + int(rng.choice(range(-P, P + 1, 2)))
        e = d + int(rng.choice(range(-N, N + 1, 2)))
        back = step(e, f)
        if abs(back) <= M and (M - back) % 2 == 0:
            return (a, b, c, d, e, f)
    raise DegenerateError("no admissible hexagon")


def draw_height_offset(rng):
    """A complex height offset at distance >= 0.1 from the integers."""
    while True:
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.4, 0.4))
        if abs(z - round(z.real)) >= 0.1:
            return z


def draw_spectral(rng, count):
    return [random_point(rng, 0.5, 1.5) for _ in range(count)]
