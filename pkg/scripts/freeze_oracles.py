"""Regenerate tests/data/oracles.json with 40-digit mpmath reference values.

Everything here is plain truncated products, direct sums and mpmath
quadrature. Nothing is imported from ellhyp, so the frozen numbers are an
independent check on the double-precision code.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


def cx(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def qp_inf(a, p, terms=400):
    out = mp.mpc(1)
    for k in range(terms):
        out *= 1 - a * p**k
    return out


def th(x, p):
    return qp_inf(x, p) * qp_inf(p / x, p)


def efac(a, k, q, p):
    out = mp.mpc(1)
    for j in range(k):
        out *= th(a * q**j, p)
    return out


def gamma(x, p, q, cut=mp.mpf(10) ** -45):
    # double product, dropping factors once |p^j q^k| is below the working precision
    out = mp.mpc(1)
    pj = mp.mpc(1)
    while abs(pj) > cut:
        pq = pj
        while abs(pq) > cut:
            out *= (1 - pq * p * q / x) / (1 - pq * x)
            pq *= q
        pj *= p
    return out


def vsum(a, bs, n, q, p):
    total = mp.mpc(0)
    for k in range(n + 1):
        t = th(a * q ** (2 * k), p) / th(a, p) * q**k * efac(a, k, q, p) / efac(q, k, q, p)
        for b in bs:
            t *= efac(b, k, q, p) / efac(a * q / b, k, q, p)
        total += t
    return total


def beta_integral(ts, p, q, nodes=64):
    """Trapezoid rule on the unit circle, doubled until two levels agree.

    The integrand is analytic in an annulus around |x| = 1, so the rule
    converges geometrically; a plain adaptive quadrature is far slower here.
    """
    cut = mp.mpf(10) ** -28

    def f(x):
        val = -th(x * x, p) * th(x * x, q) / (x * x)
        for t in ts:
            val *= gamma(t * x, p, q, cut) * gamma(t / x, p, q, cut)
        return val

    def rule(n):
        # nodes k and n-1-k are reciprocal and the integrand is x <-> 1/x symmetric
        return 2 * mp.fsum(f(mp.expjpi(mp.mpf(2 * k + 1) / n)) for k in range(n // 2)) / n

    with mp.workdps(25):
        ts = [mp.mpc(t) for t in ts]
        prev = rule(nodes)
        while True:
            nodes *= 2
            cur = rule(nodes)
            if abs(cur - prev) < mp.mpf(10) ** -20 * abs(cur):
                return +cur
            prev = cur


def sos_plusminus(lam, u, q, p):
    """R^{+-}_{+-}(lam|u) = theta(q^{1-lam}, u) / theta(q^{-lam}, uq)."""
    ql = mp.exp(-lam * mp.log(q))
    return th(q * ql, p) * th(u, p) / (th(ql, p) * th(u * q, p))


def main():
    o = {}
    o["qpochhammer_inf"] = [dict(a=cx(0.5), p=cx(0.5), value=cx(qp_inf(mp.mpf("0.5"), mp.mpf("0.5"))))]
    pts = [(-1, mp.mpf("0.1")), (0.7 * mp.expj(0.3), mp.mpc("0.25", "0.1")), (mp.mpf("0.6"), mp.mpf("0.2")),
           (mp.mpc("1.3", "-0.4"), mp.mpc("-0.35", "0")), (mp.mpc("0.2", "0.9"), mp.mpc("0.2", "0.3"))]
    o["theta"] = [dict(x=cx(x), p=cx(p), value=cx(th(mp.mpc(x), mp.mpc(p)))) for x, p in pts]
    o["efac"] = [dict(a=cx(0.4), k=2, q=cx(0.3), p=cx(0.2),
                      value=cx(efac(mp.mpf("0.4"), 2, mp.mpf("0.3"), mp.mpf("0.2"))))]
    gpts = [(mp.mpc("0.5", "0.2"), mp.mpf("0.2"), mp.mpf("0.3")),
            (mp.mpc("1.1", "-0.3"), mp.mpc("0.2", "0.15"), mp.mpc("0.3", "-0.2")),
            (mp.mpf("0.4"), mp.mpc("-0.1", "0.25"), mp.mpf("0.35"))]
    o["egamma"] = [dict(x=cx(x), p=cx(p), q=cx(q), value=cx(gamma(x, p, q))) for x, p, q in gpts]
    p, q = mp.mpf("0.2"), mp.mpf("0.3")
    o["gamma_residue_constant"] = [dict(p=cx(p), q=cx(q), value=cx(1 / (qp_inf(p, p) * qp_inf(q, q))))]
    # balanced 10V9 at n = 3 (terminating parameter q^-3 among the b's)
    p, q = mp.mpc("0.2", "0.15"), mp.mpc("0.3", "-0.2")
    a, b, c, d = mp.mpc("0.7", "0.2"), mp.mpc("0.5", "-0.4"), mp.mpc("1.2", "0.3"), mp.mpc("-0.6", "0.5")
    n = 3
    e = a * a * q ** (n + 1) / (b * c * d)
    o["vsum_10v9"] = [dict(a=cx(a), b=[cx(v) for v in (b, c, d, e, q**-n)], n=n, p=cx(p), q=cx(q),
                           value=cx(vsum(a, [b, c, d, e, q**-n], n, q, p)))]
    lam, u = mp.mpc("0.3", "0.1"), mp.mpc("0.7", "0.2")
    o["sos_plusminus"] = [dict(lam=cx(lam), u=cx(u), p=cx(p), q=cx(q), value=cx(sos_plusminus(lam, u, q, p)))]
    # beta integrals: the real symmetric point and one complex draw
    p = q = mp.mpf("0.05")
    t = (p * q) ** (mp.mpf(1) / 6)
    beta = [dict(t=[cx(t)] * 6, p=cx(p), q=cx(q), value=cx(beta_integral([t] * 6, p, q)))]
    p, q = mp.mpc("0.2", "0.1"), mp.mpc("0.3", "-0.1")
    tf = [mp.mpc("0.6", "0.2"), mp.mpc("-0.5", "0.4"), mp.mpc("0.3", "-0.6"), mp.mpc("0.7", "0"), mp.mpc("0", "0.65")]
    t5 = p * q / mp.fprod(tf)
    ts = tf + [t5]
    beta.append(dict(t=[cx(v) for v in ts], p=cx(p), q=cx(q), value=cx(beta_integral(ts, p, q))))
    o["beta_integral"] = beta
    OUT.write_text(json.dumps(o, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
