"""Canonical heights as sums of local heights, plus the limit-definition oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .curve import MordellCurve, NotOnCurveError, RationalPoint, naive_height
from .localheights import (
    DEFAULT_CONFIG,
    ArchHeightConfig,
    ArchHeightResult,
    NonArchSum,
    arch_height,
    local_height_sum_nonarch,
    mp_context,
)
from .numtheory import DomainError

MAX_ORACLE_DOUBLINGS = 10


@dataclass(frozen=True)
class HeightBreakdown:
    """Canonical height of a point with its per-place decomposition.

    ``arch`` and ``nonarch`` describe the point on the sixth-power-free model
    ``y^2 = x^3 + reduced_b``; ``scale`` is the ``u`` with ``b = u^6 reduced_b``.
    ``analytic`` is always the sum of local heights, even for torsion points,
    where ``canonical`` is exactly zero.
    """

    b: int
    point: RationalPoint
    reduced_b: int
    scale: int
    reduced_point: RationalPoint
    canonical: object
    analytic: object
    naive: object
    arch: ArchHeightResult | None
    nonarch: NonArchSum | None
    error_bound: object
    torsion: bool


def _curve_and_point(b: int, P: RationalPoint) -> tuple[MordellCurve, MordellCurve, RationalPoint]:
    curve = MordellCurve(b)
    if not curve.contains(P):
        raise NotOnCurveError(f"{P!r} is not on y^2 = x^3 + {b}")
    reduced = curve.reduced()
    return curve, reduced, curve.to_reduced(P)


def canonical_height(b: int, P: RationalPoint, config: ArchHeightConfig = DEFAULT_CONFIG) -> HeightBreakdown:
    curve, reduced, Q = _curve_and_point(b, P)
    ctx = mp_context(config.precision_bits)
    naive = naive_height(P, ctx)
    u = curve.decomposition.u
    if P.is_infinity:
        return HeightBreakdown(b, P, reduced.b, u, Q, ctx.zero, ctx.zero, naive, None, None, ctx.zero, True)
    arch = arch_height(reduced.b, Q, config)
    nonarch = local_height_sum_nonarch(reduced.b, Q)
    analytic = arch.value + nonarch.evaluate(ctx)
    torsion = reduced.is_torsion(Q)
    canonical = ctx.zero if torsion else analytic
    error = ctx.zero if torsion else arch.error_bound
    return HeightBreakdown(b, P, reduced.b, u, Q, canonical, analytic, naive, arch, nonarch, error, torsion)


def height_difference(b: int, P: RationalPoint, config: ArchHeightConfig = DEFAULT_CONFIG):
    """``h(P)/2 - canonical height``, with ``h`` taken on the model ``y^2 = x^3 + b`` as given."""
    if P.is_infinity:
        raise DomainError("height difference is taken at affine points only")
    hb = canonical_height(b, P, config)
    return hb.naive / 2 - hb.canonical


def _double_x_exact(num: gmpy2.mpz, den: gmpy2.mpz, b: int):
    """x-only duplication on integers, reduced to lowest terms; None at infinity."""
    bb = gmpy2.mpz(b)
    den3 = den * den * den
    d = 4 * den * (num * num * num + bb * den3)
    if d == 0:
        return None
    n = num * (num * num * num - 8 * bb * den3)
    g = gmpy2.gcd(n, d)
    n, d = n // g, d // g
    if d < 0:
        n, d = -n, -d
    return n, d


def limit_oracle(b: int, P: RationalPoint, n: int, precision_bits: int = 256):
    """``h(2^n P) / (2 * 4^n)`` by exact repeated doubling; zero on torsion points."""
    if not 0 <= n <= MAX_ORACLE_DOUBLINGS:
        raise DomainError(f"n must lie in [0, {MAX_ORACLE_DOUBLINGS}]; coordinates grow 4x per doubling")
    curve = MordellCurve(b)
    if not curve.contains(P):
        raise NotOnCurveError(f"{P!r} is not on y^2 = x^3 + {b}")
    ctx = mp_context(precision_bits)
    if curve.is_torsion(P):
        return ctx.zero
    num, den = gmpy2.mpz(P.x.numerator), gmpy2.mpz(P.x.denominator)
    for _ in range(n):
        num, den = _double_x_exact(num, den, b)
    m = max(abs(num), den)
    return ctx.log(ctx.mpf(int(m))) / (2 * 4**n)


def x_of_multiple(b: int, x: Fraction, n: int) -> Fraction | None:
    """``x(2^n P)`` from ``x(P)`` alone, exactly."""
    num, den = gmpy2.mpz(x.numerator), gmpy2.mpz(x.denominator)
    for _ in range(n):
        step = _double_x_exact(num, den, b)
        if step is None:
            return None
        num, den = step
    return Fraction(int(num), int(den))
