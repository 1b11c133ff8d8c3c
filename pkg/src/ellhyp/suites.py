"""Seeded identity suites and the report they produce.

Each suite is a function of (ctx, rng, trial) returning (check id, result)
pairs. Trials run on a thread pool; records are sorted by (id, trial)
afterwards so the report does not depend on scheduling.
"""

from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import beta_integral as bi
from . import gamma as eg
from . import series as sr
from . import sos
from . import toolkit as tk
from .biorthogonal import biorthogonality_check, draw_family
from .numerics import (
    CheckResult,
    EllipticContext,
    EllipticError,
    compare,
    random_point,
    random_points,
    relative_residual,
)
from .theta import quasi_shift, theta, theta_series

# nomes used by the fixed theta checks
THETA_NOMES = (0.1, 0.4, 0.2 + 0.3j, -0.35)
# small-p context for the continuous biorthogonality integral (needs |p t3| < 1 with |t3| > 1)
BIORTHOGONALITY_CONTEXT = dict(p=0.005, q=0.5)


@dataclass
class Record:
    id: str
    trial: int
    params: dict
    residual: float | None
    scale: float | None
    passed: bool

    def to_dict(self):
        return {"id": self.id, "params": self.params, "residual": self.residual,
                "scale": self.scale, "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    ctx: EllipticContext
    seed: int
    records: list = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self, timestamp: bool = True):
        ctx = self.ctx
        return {
            "suite": self.suite,
            "context": {"p": [ctx.p.real, ctx.p.imag], "q": [ctx.q.real, ctx.q.imag],
                        "tol": ctx.tol, "seed": self.seed},
            "checks": [r.to_dict() for r in self.records],
            "summary": {"total": len(self.records), "passed": self.passed, "failed": self.failed},
            "wall_ms": round(self.wall_ms, 3) if timestamp else 0,
        }


def jsonable(obj):
    """Plain JSON types; complex numbers become [re, im], non-finite floats null."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _record(cid, trial, res: CheckResult, extra=None, passed=None):
    params = dict(res.witness) if isinstance(res.witness, dict) else (
        {"witness": res.witness} if res.witness is not None else {})
    if extra:
        params.update(extra)
    passed = res.passed if passed is None else passed
    return Record(cid, trial, jsonable(params), jsonable(res.residual), jsonable(res.scale), bool(passed))


def _error_record(cid, trial, exc):
    return Record(cid, trial, {"error": f"{type(exc).__name__}: {exc}"}, None, None, False)


def _retry(fn, rng, tries=20):
    return sr._retry(fn, rng, tries)


# ---------------------------------------------------------------- suites

def theta_suite(ctx, rng, trial):
    out = []
    if trial == 0:
        for p in THETA_NOMES + (ctx.p,):
            sp = cmath.sqrt(p)
            val = theta(-1, p, ctx) * theta(sp, p, ctx) * theta(-sp, p, ctx)
            out.append(("theta.constant", relative_residual(val, 2, 0.0, ctx, witness=dict(p=p))))
    for p in THETA_NOMES + (ctx.p,):
        x = random_point(rng, 0.3, 2.0)
        out.append(("theta.product_vs_series",
                    compare(theta(x, p, ctx), theta_series(x, p, ctx), ctx, witness=dict(p=p, x=x))))
    p = ctx.p
    x = random_point(rng, 0.3, 2.0)
    t = theta(x, p, ctx)
    out.append(("theta.inversion", compare(theta(1 / x, p, ctx), -t / x, ctx, witness=dict(x=x))))
    k = int(rng.integers(-3, 4))
    out.append(("theta.quasi_period",
                compare(theta(p**k * x, p, ctx), quasi_shift(x, p, k, ctx), ctx, witness=dict(x=x, k=k))))
    return out


def toolkit_suite(ctx, rng, trial):
    out = [("toolkit.efac_rules", tk.efac_identity_suite(ctx, 1, rng))]
    a, b, c, x = random_points(rng, 4)
    out.append(("toolkit.three_term", tk.three_term_check(a, b, c, x, ctx)))
    n = 2 + trial % 7
    out.append(("toolkit.partial_fractions", tk.partial_fraction_suite(n, ctx, 1, rng)))
    out.append(("toolkit.theta_sum", tk.theta_sum_identity(1 + trial % 4, ctx, rng=rng)))
    out.append(("toolkit.frobenius", tk.frobenius_determinant(1 + trial % 5, ctx, rng)))
    three, two, sine = tk.elliptic_number_check(ctx, 1, rng)
    # the two-term relation must fail for elliptic numbers: pass means residual > 1e3 tol scale
    out += [("toolkit.elliptic_number.three_term", three),
            ("toolkit.elliptic_number.two_term_fails", two, two.residual > 1e3 * two.tol * two.scale),
            ("toolkit.sine.two_term", sine)]
    return out


def series_suite(ctx, rng, trial):
    out = []
    n = trial % 5
    out.append(("series.e_reversal",
                _retry(lambda g: sr.e_sum_reversal_check(random_points(g, 2), random_points(g, 2), n,
                                                         random_point(g), ctx), rng)))
    root = 1 if trial % 2 == 0 else -1
    out.append(("series.v_even_vanishing",
                _retry(lambda g: sr.v_even_vanishing_check(random_points(g, 4), 2, ctx, root), rng)))
    a, b, c, x = random_points(rng, 4)
    out.append(("series.binomial_expansion", sr.binomial_expansion_check(n, a, b, c, x, ctx)))
    out.append(("series.pascal", sr.pascal_recursion_check(n, min(n, 2), a, b, c, ctx)))
    m = trial % 4
    out.append(("series.connection",
                _retry(lambda g: sr.connection_check(*random_points(g, 4), m, min(1, m), random_point(g), ctx), rng)))
    out.append(("series.r_unitarity",
                _retry(lambda g: sr.connection_unitarity_check(*random_points(g, 4), m, ctx), rng)))
    out.append(("series.r_addition",
                _retry(lambda g: sr.connection_addition_check(*random_points(g, 6), min(m, 3), ctx), rng)))
    al, be = trial % 2, (trial // 2) % 2
    out.append(("series.r_convolution",
                _retry(lambda g: sr.connection_convolution_check(*random_points(g, 4), 2, 1, al, be, ctx), rng)))
    out.append(("series.indefinite_sum",
                _retry(lambda g: sr.indefinite_sum_check(*random_points(g, 4), 1 + trial % 6, ctx), rng)))
    xs = random_points(rng, 4)
    out.append(("series.total_ellipticity", sr.total_ellipticity_check(xs, [1, -1, 0, 1], 3, 0.7, ctx)))
    out.append(("series.matrix_inversion",
                sr.matrix_inversion_check(random_points(rng, 6), random_points(rng, 6), ctx)))
    return out


def frenkel_turaev_suite(ctx, rng, trial):
    n = trial % 9
    out = [("frenkel_turaev.sum", _retry(lambda g: sr.frenkel_turaev(*random_points(g, 4), n, ctx), rng))]
    if trial < 20:
        out.append(("frenkel_turaev.saalschutz_limit",
                    _retry(lambda g: sr.saalschutz_limit_check(*random_points(g, 3), n % 6, ctx), rng)))
    return out


def bailey_suite(ctx, rng, trial):
    n = trial % 6
    out = [("bailey.transform", _retry(lambda g: sr.bailey_transform(*random_points(g, 6), n, ctx), rng)),
           ("bailey.iterated", _retry(lambda g: sr.bailey_iterated_check(*random_points(g, 6), n % 4, ctx), rng))]
    out.append(("bailey.r_unitarity",
                _retry(lambda g: sr.connection_unitarity_check(*random_points(g, 4), trial % 5, ctx), rng)))
    return out


def quadratic_suite(ctx, rng, trial, q_alt=0.3, r_alt=0.45):
    a, b, c, d = (random_points(rng, 8) for _ in range(4))
    out = [("quadratic.telescoping", sr.telescoping_check(a, b, c, d, ctx)),
           ("quadratic.telescoping_rational", sr.telescoping_rational_check(a, b, c, d, ctx))]
    n = trial % 5
    out.append(("quadratic.bibasic",
                _retry(lambda g: sr.bibasic_check(*random_points(g, 4), q_alt, r_alt, n, ctx), rng)))
    out.append(("quadratic.kronecker",
                _retry(lambda g: sr.kronecker_check(*random_points(g, 2), q_alt, r_alt, n, ctx), rng)))
    out.append(("quadratic.quadratic_sum",
                _retry(lambda g: sr.warnaar_quadratic(*random_points(g, 3), n, ctx), rng)))
    return out


def _minton_shape(rng):
    r = int(rng.integers(1, 4))
    while True:
        ms = [int(m) for m in rng.integers(0, 4, size=r)]
        if sum(ms) <= 5:
            return ms


def minton_suite(ctx, rng, trial):
    ms = _minton_shape(rng)
    res = _retry(lambda g: sr.minton_sum(*random_points(g, 2), random_points(g, len(ms)), ms, ctx), rng)
    return [("minton.sum", res)]


def biorthogonal_suite(ctx, rng, trial):
    fam = draw_family(trial % 7, ctx, rng)
    return [("biorthogonal.gram", biorthogonality_check(fam))]


def gamma_suite(ctx, rng, trial):
    x = random_point(rng, 0.4, 1.4)
    out = [("gamma.inversion", eg.inversion_check(x, ctx)),
           ("gamma.q_shift", eg.shift_check(x, ctx, "q")),
           ("gamma.p_shift", eg.shift_check(x, ctx, "p")),
           ("gamma.symmetry", eg.symmetry_check(x, ctx)),
           ("gamma.reflection_pair", eg.reflection_pair_check(x, ctx)),
           ("gamma.efac", eg.efac_via_gamma(random_point(rng, 0.3, 0.9), trial % 13, ctx))]
    if trial == 0:
        out.append(("gamma.residue_constant", eg.residue_check(ctx.p, ctx.q, ctx=ctx)))
    return out


_CB_PAIRS = ((0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0))


def beta_integral_suite(ctx, rng, trial):
    t_free = bi.draw_spiridonov(ctx, rng)
    out = [("beta.spiridonov", bi.spiridonov_eval(t_free, ctx=ctx, nodes=64, max_doublings=8)),
           ("beta.radius_robustness", bi.radius_robustness_check(t_free, ctx))]
    ts = list(t_free) + [ctx.p * ctx.q / np.prod(t_free)]
    spec = bi.IntegralSpec(ts, ctx.p, ctx.q)
    x = random_point(rng, 0.6, 1.4)
    k = 1 + trial % 3
    out.append(("beta.q_shift", bi.qshift_ratio_check(x, k, spec, ctx)))
    out.append(("beta.elliptic_criterion", bi.elliptic_criterion_check(spec, x, ctx)))
    u = random_points(rng, 5, 0.5, 0.9)
    u.append(ctx.q / np.prod(u))
    out.append(("beta.q_shift_vwp", bi.qshift_vwp_check(x, k, u, ctx.p, ctx.q, ctx)))
    if trial < 3:
        out.append(("beta.residue_link",
                    _retry(lambda g: bi.residue_series_link(random_points(g, 5, 0.5, 0.9), 3, ctx), rng)))
    cb_ctx = ctx.with_(**BIORTHOGONALITY_CONTEXT)
    kk, ll = _CB_PAIRS[trial % len(_CB_PAIRS)]
    tb = bi.draw_biorthogonality(kk, ll, cb_ctx, rng)
    out.append(("beta.continuous_biorthogonality", bi.continuous_biorthogonality(tb, kk, ll, ctx=cb_ctx)))
    return out


def sos_suite(ctx, rng, trial):
    lam = sos.draw_height_offset(rng)
    u, v, w = sos.draw_spectral(rng, 3)
    out = [("sos.symmetries", sos.symmetry_check(lam, u, ctx)),
           ("sos.yang_baxter", sos.yang_baxter_check(lam, u, v, w, ctx)),
           ("sos.operator_yang_baxter", sos.operator_consistency_check(lam, u, v, w, ctx)),
           ("sos.operator_unitarity", sos.operator_unitarity_check(lam, u, v, ctx)),
           ("sos.unitarity", sos.unitarity_check(lam, u, v, ctx))]
    lhs, rhs = sos.four_term_sides(lam, u, v, w, ctx)
    out.append(("sos.four_term", compare(lhs, rhs, ctx)))
    s = cmath.sqrt(u) * (1 if trial % 2 == 0 else -1)
    xs = sos.draw_spectral(rng, 4)
    out.append(("sos.phi_path_independence", sos.path_independence_check(lam, s, xs[0], ctx)))
    out.append(("sos.phi_closed_form", sos.phi_M_check(1 + trial % 3, lam, s, xs[1], ctx)))
    out.append(("sos.weight_expansion", sos.expansion_check(lam, s, xs, ctx)))
    return out


_FUSION_SHAPES = ((1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2), (3, 3))
_FYB_SHAPES = ((1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 1), (2, 1, 2), (1, 2, 2), (2, 2, 2))


def _fused_spec(M, N, a, u, rng):
    b = a + int(rng.choice(range(-N, N + 1, 2)))
    c = a + int(rng.choice(range(-M, M + 1, 2)))
    d_opts = [b + j for j in range(-M, M + 1, 2) if abs(sos.step(c, b + j)) <= N
              and (N - sos.step(c, b + j)) % 2 == 0]
    d = d_opts[int(rng.integers(len(d_opts)))]
    return sos.FusedWeightSpec(M, N, a, b, c, d, u)


def fusion_suite(ctx, rng, trial):
    a = sos.draw_height_offset(rng)
    u, v, w = sos.draw_spectral(rng, 3)
    M, N = _FUSION_SHAPES[trial % len(_FUSION_SHAPES)]
    out = [("fusion.boundary_independence", sos.boundary_independence_check(_fused_spec(M, N, a, u, rng), ctx))]
    m = 1 + trial % 3
    out.append(("fusion.connection_coefficient", sos.fused_vs_connection(_fused_spec(m, m, a, u, rng), ctx)))
    Me, Ne = 1 + trial % 3, 1 + (trial // 3) % 3
    out.append(("fusion.expansion",
                sos.fused_expansion_check(Me, Ne, a, cmath.sqrt(u), sos.draw_spectral(rng, 2), ctx)))
    shape = _FYB_SHAPES[trial % len(_FYB_SHAPES)]
    heights = sos.draw_hexagon(*shape, a, rng)
    out.append(("fusion.yang_baxter", sos.fused_yang_baxter(*shape, heights, u, v, w, ctx)))
    return out


# name -> (trial function, default number of trials)
SUITES = {
    "theta": (theta_suite, 64),
    "toolkit": (toolkit_suite, 100),
    "series": (series_suite, 20),
    "frenkel-turaev": (frenkel_turaev_suite, 100),
    "bailey": (bailey_suite, 50),
    "quadratic": (quadratic_suite, 20),
    "minton": (minton_suite, 50),
    "biorthogonal": (biorthogonal_suite, 10),
    "gamma": (gamma_suite, 32),
    "beta-integral": (beta_integral_suite, 25),
    "sos": (sos_suite, 20),
    "fusion": (fusion_suite, 18),
}


def _run_trial(name, fn, ctx, trial):
    rng = ctx.rng(name, trial)
    try:
        pairs = fn(ctx, rng, trial)
    except (EllipticError, ZeroDivisionError, ArithmeticError) as exc:
        return [_error_record(f"{name}.trial", trial, exc)]
    return [_record(item[0], trial, item[1], {"trial": trial}, *item[2:]) for item in pairs]


def run_suite(name: str, ctx: EllipticContext, trials: int | None = None, workers: int = 4) -> SuiteReport:
    """Run one suite (or "all") and return its report, records sorted by (id, trial)."""
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES:
            raise KeyError(f"unknown suite {n!r}")
    start = time.perf_counter()
    jobs = []
    for n in names:
        fn, default = SUITES[n]
        jobs += [(n, fn, t) for t in range(default if trials is None else trials)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        chunks = list(pool.map(lambda job: _run_trial(job[0], job[1], ctx, job[2]), jobs))
    records = sorted((r for chunk in chunks for r in chunk), key=lambda r: (r.id, r.trial))
    report = SuiteReport(name, ctx, ctx.rng_seed, records)
    report.wall_ms = (time.perf_counter() - start) * 1000
    return report
