"""Classical (p = 0) q-series and rational oracles.

Deliberately written without any theta machinery so they can serve as
independent references for the elliptic code.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def qpoch(a, q, k: int):
    out = 1 + 0j
    for j in range(k):
        out *= 1 - a * q**j
    return out


def saalschutz_sum(a, b, c, n: int, q):
    """Terminating balanced 3phi2(q^-n, a, b; c, a b q^{1-n}/c; q, q) by direct summation."""
    d = a * b * q ** (1 - n) / c
    total = 0j
    for k in range(n + 1):
        total += (qpoch(q**-n, q, k) * qpoch(a, q, k) * qpoch(b, q, k)
                  / (qpoch(q, q, k) * qpoch(c, q, k) * qpoch(d, q, k)) * q**k)
    return total


def saalschutz_product(a, b, c, n: int, q):
    return qpoch(c / a, q, n) * qpoch(c / b, q, n) / (qpoch(c, q, n) * qpoch(c / (a * b), q, n))


def rising(x, k: int):
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def minton_sum_exact(n: int, b: Fraction, cs, ms) -> Fraction:
    """Terminating F(-n, b, c_l + m_l; b + 1, c_l; 1) in exact rational arithmetic."""
    total = Fraction(0)
    for k in range(n + 1):
        term = rising(Fraction(-n), k) * rising(b, k) / (rising(b + 1, k) * factorial(k))
        for c, m in zip(cs, ms):
            term *= rising(c + m, k) / rising(c, k)
        total += term
    return total


def minton_product_exact(n: int, b: Fraction, cs, ms) -> Fraction:
    out = Fraction(factorial(n)) / rising(b + 1, n)
    for c, m in zip(cs, ms):
        out *= rising(c - b, m) / rising(c, m)
    return out
