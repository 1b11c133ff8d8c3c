"""Shared precision, residual, sampling and contour-quadrature helpers."""

from __future__ import annotations

import cmath
import math
import zlib
from dataclasses import dataclass, field, replace

import numpy as np


class EllipticError(ValueError):
    """Base class for evaluation errors raised by this package."""


class DomainError(EllipticError):
    pass


class PoleError(EllipticError):
    pass


class DegenerateError(EllipticError):
    pass


class QuadratureStall(EllipticError):
    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


@dataclass(frozen=True)
class EllipticContext:
    p: complex = 0.2 + 0.15j
    q: complex = 0.3 - 0.2j
    eps_trunc: float = 1e-15
    tol: float = 1e-9
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", complex(self.p))
        object.__setattr__(self, "q", complex(self.q))
        if not 0 < abs(self.p) < 1:
            raise DomainError("nome out of range: need 0 < |p| < 1")
        if not 0 < abs(self.q) < 1:
            raise DomainError("base out of range: need 0 < |q| < 1")
        if self.eps_trunc <= 0 or self.tol <= 0:
            raise DomainError("eps_trunc and tol must be positive")

    def with_(self, **changes) -> "EllipticContext":
        return replace(self, **changes)

    def rng(self, *salt) -> np.random.Generator:
        """Generator seeded from rng_seed and an optional salt (strings or ints)."""
        words = [int(self.rng_seed)]
        for s in salt:
            if isinstance(s, str):
                words.append(zlib.crc32(s.encode()))
            else:
                words.append(int(s))
        return np.random.default_rng(words)

    def resonance_probe(self, rank: int = 32) -> list[tuple[int, int]]:
        """Pairs (k, l), not both zero, with q^k close to p^l.

        Such coincidences make (q;q,p)_k vanish and break the sums.
        """
        hits = []
        lq, lp = cmath.log(self.q), cmath.log(self.p)
        for k in range(-rank, rank + 1):
            for l in range(-rank, rank + 1):
                if k == 0 and l == 0:
                    continue
                z = k * lq - l * lp
                # q^k = p^l iff z is in 2*pi*i*Z
                z = complex(z.real, math.remainder(z.imag, 2 * math.pi))
                if abs(z) <= self.eps_trunc * 10:
                    hits.append((k, l))
        return hits

    def sqrt_p(self) -> complex:
        return cmath.sqrt(self.p)


DEFAULT = EllipticContext()


class Scaled(complex):
    """A complex value that remembers the largest intermediate term behind it."""

    def __new__(cls, value, scale=0.0):
        obj = super().__new__(cls, value)
        obj.scale = float(scale)
        return obj


def term_scale(*values) -> float:
    s = 0.0
    for v in values:
        s = max(s, getattr(v, "scale", 0.0), abs(v))
    return s


@dataclass
class CheckResult:
    residual: float
    scale: float
    tol: float
    witness: dict | None = None
    label: str = ""

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol * self.scale

    @property
    def ratio(self) -> float:
        return self.residual / self.scale

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"residual": self.residual, "scale": self.scale, "pass": self.passed}

    def __repr__(self):
        tag = "pass" if self.passed else "FAIL"
        return f"CheckResult({self.label!r}, ratio={self.ratio:.3e}, tol={self.tol:g}, {tag})"


def _finite(z) -> bool:
    z = complex(z)
    return math.isfinite(z.real) and math.isfinite(z.imag)


def relative_residual(lhs, rhs, term_scale_=0.0, ctx: EllipticContext = DEFAULT, witness=None, label=""):
    if not (_finite(lhs) and _finite(rhs) and math.isfinite(term_scale_)):
        raise DomainError("non-finite operand")
    if term_scale_ < 0:
        raise DomainError("term_scale must be nonnegative")
    lhs, rhs = complex(lhs), complex(rhs)
    scale = max(1.0, float(term_scale_), abs(lhs), abs(rhs))
    return CheckResult(abs(lhs - rhs), scale, ctx.tol, witness, label)


def compare(lhs, rhs, ctx, extra_scale=0.0, witness=None, label=""):
    """relative_residual with the term scales carried by Scaled operands folded in."""
    return relative_residual(lhs, rhs, max(extra_scale, term_scale(lhs, rhs)), ctx, witness, label)


def worst(results, label=None) -> CheckResult:
    """The result with the largest residual/scale ratio (failures first)."""
    results = list(results)
    if not results:
        raise ValueError("no results to aggregate")
    out = max(results, key=lambda r: (not r.passed, r.ratio))
    if label is not None:
        out = replace(out, label=label)
    return out


def sample_annulus(r_min, r_max, count, excluded_rays=(), ctx: EllipticContext = DEFAULT, rng=None):
    """Seeded points in r_min <= |x| <= r_max, log-uniform in modulus, avoiding rays."""
    if not (0 < r_min <= r_max) or count < 1:
        raise DomainError("need 0 < r_min <= r_max and count >= 1")
    if rng is None:
        rng = ctx.rng("sample_annulus")
    rays = [complex(d) / abs(d) for d in excluded_rays]
    width = 10 * ctx.eps_trunc
    lo, hi = math.log(r_min), math.log(r_max)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise DegenerateError("no admissible sample")
        rad = math.exp(lo + (hi - lo) * rng.random())
        ang = 2 * math.pi * rng.random()
        z = cmath.rect(rad, ang)
        if any(abs(cmath.phase(z / d)) < width for d in rays):
            continue
        out.append(z)
    return out


def random_point(rng, r_min=0.3, r_max=1.5) -> complex:
    rad = math.exp(math.log(r_min) + (math.log(r_max) - math.log(r_min)) * rng.random())
    return cmath.rect(rad, 2 * math.pi * rng.random())


def random_points(rng, count, r_min=0.3, r_max=1.5) -> list[complex]:
    return [random_point(rng, r_min, r_max) for _ in range(count)]


class ContourEstimate(Scaled):
    """Quadrature value with its final successive-difference `delta` and node count."""

    def __new__(cls, value, scale, delta, nodes):
        obj = super().__new__(cls, value, scale)
        obj.delta = float(delta)
        obj.nodes = int(nodes)
        return obj


_ROUNDOFF_FLOOR = 256 * np.finfo(float).eps


def _circle_engine(g, nodes, max_doublings, tol):
    """Trapezoid mean of g(theta) over [0, 2pi) with node doubling.

    g receives an array of angles and returns an array of values.
    """
    if nodes < 8 or nodes & (nodes - 1):
        raise DomainError("nodes must be a power of two >= 8")
    n = nodes
    th = 2 * np.pi * np.arange(n) / n
    vals = np.asarray(g(th), dtype=complex)
    est = complex(vals.mean())
    mag = float(np.abs(vals).max())
    for _ in range(max_doublings):
        th = 2 * np.pi * (np.arange(n) + 0.5) / n
        vals = np.asarray(g(th), dtype=complex)
        mag = max(mag, float(np.abs(vals).max()))
        new = 0.5 * (est + complex(vals.mean()))
        n *= 2
        delta = abs(new - est)
        if not math.isfinite(delta):
            raise QuadratureStall("quadrature stall: non-finite integrand", (est, new))
        scale = max(1.0, abs(new))
        # the second test is the round-off floor of a mean of values up to mag
        if delta <= tol * scale or delta <= _ROUNDOFF_FLOOR * mag:
            return ContourEstimate(new, max(mag, abs(new)), delta, n)
        prev, est = est, new
    raise QuadratureStall(f"quadrature stall after {n} nodes: estimates {prev!r}, {est!r}", (prev, est))


def trapezoid_contour(f, r=1.0, nodes=16, max_doublings=10, ctx: EllipticContext = DEFAULT):
    """(1/2 pi i) of the contour integral of f(x) dx/x over |x| = r.

    f must accept a numpy array of points. The returned ContourEstimate
    carries the last successive difference in `.delta`.
    """
    return _circle_engine(lambda th: f(r * np.exp(1j * th)), nodes, max_doublings, ctx.tol)


def circle_integral(f, center, radius, nodes=16, max_doublings=10, ctx: EllipticContext = DEFAULT):
    """(1/2 pi i) of the contour integral of f(x) dx over |x - center| = radius.

    For a simple pole inside the circle this is the residue.
    """
    def g(th):
        w = radius * np.exp(1j * th)
        return f(center + w) * w
    return _circle_engine(g, nodes, max_doublings, ctx.tol)


def fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def binom2(k: int) -> int:
    return k * (k - 1) // 2
