"""Local height functions on ``y^2 = x^3 + b``.

Normalization: ``canonical height = sum over places of the local heights`` with
each local height carrying its ``-(1/12) log |Delta|_v`` term.  Tools that
report the doubled normalization ``2*lambda_v + (1/6) log |Delta|_v`` (and a
canonical height twice ours) differ from these values by that affine map.

Non-archimedean values are exact rational multiples of ``log p``.  The
archimedean value comes from Tate's series evaluated in an explicit mpmath
context, so no global precision state is touched.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext

from .curve import RationalPoint
from .numtheory import (
    DomainError,
    is_cubic_residue,
    is_quadratic_residue,
    ord_p,
    ord_p_rational,
    prime_divisors,
)

NEG_TAIL_CONSTANT = Fraction(4, 3)  # times log 9, since 1 <= z <= 9
POS_TAIL_CONSTANT = Fraction("2.24")


@lru_cache(maxsize=None)
def mp_context(precision_bits: int) -> MPContext:
    """A private mpmath context at ``precision_bits``; never mutated after creation."""
    ctx = MPContext()
    ctx.prec = precision_bits
    return ctx


# non-archimedean places


@dataclass(frozen=True)
class NonArchLocalHeight:
    """``lambda_p(P) = coefficient * log p``, assembled from three exact parts."""

    prime: int
    max_term: Fraction  # 1/2 log max{1, |x|_p}
    disc_term: Fraction  # -(1/12) log |Delta|_p
    correction: Fraction
    case: str

    @property
    def coefficient(self) -> Fraction:
        return self.max_term + self.disc_term - self.correction

    def evaluate(self, ctx):
        return ctx.mpf(self.coefficient.numerator) / self.coefficient.denominator * ctx.log(self.prime)


def _common_terms(b: int, x: Fraction, p: int) -> tuple[Fraction, Fraction]:
    ox = ord_p_rational(x, p) if x else 1
    max_term = Fraction(max(0, -ox), 2)
    disc_term = Fraction(ord_p(432, p) + 2 * ord_p(b, p), 12) if p in (2, 3) or b % p == 0 else Fraction(0)
    return max_term, disc_term


def _ord_positive(x: Fraction, p: int) -> bool:
    return x == 0 or ord_p_rational(x, p) > 0


def _check_args(b: int, P: RationalPoint, p: int) -> None:
    if P.is_infinity:
        raise DomainError("local heights are undefined at the point at infinity")
    if b % p**6 == 0:
        raise DomainError(f"{p}^6 divides b = {b}")


def local_height_p(b: int, P: RationalPoint, p: int) -> NonArchLocalHeight:
    if p <= 3:
        raise DomainError("local_height_p needs p > 3")
    _check_args(b, P, p)
    max_term, disc_term = _common_terms(b, P.x, p)
    correction, case = Fraction(0), "nonsingular"
    if b % p == 0 and _ord_positive(P.x, p):
        e = ord_p(b, p)
        if e == 2 and is_quadratic_residue(b // p**2, p):
            correction, case = Fraction(1, 3), "ord 2, quadratic residue"
        elif e == 3 and is_cubic_residue(-b // p**3, p):
            correction, case = Fraction(1, 2), "ord 3, cubic residue"
        elif e == 4 and is_quadratic_residue(b // p**4, p):
            correction, case = Fraction(2, 3), "ord 4, quadratic residue"
        else:
            case = "singular, trivial component group"
    return NonArchLocalHeight(p, max_term, disc_term, correction, case)


def local_height_3(b: int, P: RationalPoint) -> NonArchLocalHeight:
    _check_args(b, P, 3)
    max_term, disc_term = _common_terms(b, P.x, 3)
    correction, case = Fraction(0), "no correction"
    x_pos = _ord_positive(P.x, 3)
    r = b % 243
    if b % 9 in (1, 8) and _ord_positive(P.x + b, 3):
        correction, case = Fraction(1, 4), "b = 1, 8 mod 9"
    elif b % 27 == 9 and x_pos:
        correction, case = Fraction(1, 3), "b = 9 mod 27"
    elif r in (54, 81, 108) and x_pos:
        correction, case = Fraction(2, 3), "b = 54, 81, 108 mod 243"
    elif r in (27, 216) and x_pos:
        correction, case = Fraction(3, 4), "b = 27, 216 mod 243"
    return NonArchLocalHeight(3, max_term, disc_term, correction, case)


def local_height_2(b: int, P: RationalPoint) -> NonArchLocalHeight:
    """2-adic local height; ``b = 16 (mod 64)`` is handled through the minimal model."""
    _check_args(b, P, 2)
    max_term, disc_term = _common_terms(b, P.x, 2)
    correction, case = Fraction(0), "no correction"
    if _ord_positive(P.x, 2):
        if b % 8 == 1:
            correction, case = Fraction(1, 3), "b = 1 mod 8"
        elif b % 16 in (8, 12):
            correction, case = Fraction(1, 2), "b = 8, 12 mod 16"
        elif b % 32 == 4:
            correction, case = Fraction(2, 3), "b = 4 mod 32"
        elif b % 64 == 16:
            correction, case = Fraction(1), "b = 16 mod 64 (non-minimal model)"
    return NonArchLocalHeight(2, max_term, disc_term, correction, case)


def local_height_nonarch(b: int, P: RationalPoint, p: int) -> NonArchLocalHeight:
    if p == 2:
        return local_height_2(b, P)
    if p == 3:
        return local_height_3(b, P)
    return local_height_p(b, P, p)


@dataclass(frozen=True)
class NonArchSum:
    """Exact sum of non-archimedean local heights, ``sum_p coefficient_p * log p``."""

    terms: tuple[NonArchLocalHeight, ...]

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return {t.prime: t.coefficient for t in self.terms if t.coefficient}

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self, ctx):
        total = ctx.zero
        for t in self.terms:
            if t.coefficient:
                total += t.evaluate(ctx)
        return total


def relevant_primes(b: int, x: Fraction) -> list[int]:
    """Primes at which the local height can be nonzero: those dividing ``6 b den(x)``."""
    primes = {2, 3} | set(prime_divisors(b))
    if x.denominator > 1:
        primes |= set(prime_divisors(x.denominator))
    return sorted(primes)


def local_height_sum_nonarch(b: int, P: RationalPoint) -> NonArchSum:
    if P.is_infinity:
        raise DomainError("local heights are undefined at the point at infinity")
    return NonArchSum(tuple(local_height_nonarch(b, P, p) for p in relevant_primes(b, P.x)))


# archimedean place


class ArchBranch(Enum):
    NEGATIVE_B = "NegativeB"
    POSITIVE_B_TRANSLATED = "PositiveBTranslated"


@dataclass(frozen=True)
class ArchHeightConfig:
    """Working precision, series depth ``K``, and how many leading doublings run exactly."""

    precision_bits: int = 256
    depth: int = 40
    exact_steps: int = 3

    def __post_init__(self):
        if self.precision_bits < 64:
            raise DomainError("precision_bits must be at least 64")
        if self.depth < 1:
            raise DomainError("depth must be at least 1")
        if not 0 <= self.exact_steps <= 10:
            raise DomainError("exact_steps must lie in [0, 10]")


DEFAULT_CONFIG = ArchHeightConfig()


@dataclass(frozen=True)
class ArchHeightResult:
    value: object  # mpf
    tail_bound: object  # mpf; bound on the omitted terms of the series
    rounding_bound: object  # mpf
    branch: ArchBranch
    z_values: tuple  # z(2^k P) for k < depth, on the model the series runs on
    config: ArchHeightConfig

    @property
    def error_bound(self):
        return self.tail_bound + self.rounding_bound


def duplicate_x(x: Fraction, b: int) -> Fraction | None:
    """``x(2P) = (x^4 - 8 b x) / (4 (x^3 + b))``; None when ``2P`` is the point at infinity."""
    d = x**3 + b
    if d == 0:
        return None
    return (x**4 - 8 * b * x) / (4 * d)


def _series_coefficients(ctx, b: int):
    """``(b2, b4, b6, b8, shift)`` of the model the series runs on."""
    if b < 0:
        return ctx.zero, ctx.zero, ctx.mpf(4 * b), ctx.zero, ctx.zero
    beta = ctx.cbrt(ctx.mpf(b))
    return (-24 * beta, 24 * beta**2, ctx.mpf(-28 * b), 24 * beta**4, 2 * beta)


def arch_height(b: int, P: RationalPoint, config: ArchHeightConfig = DEFAULT_CONFIG) -> ArchHeightResult:
    """Archimedean local height via Tate's series.

    For ``b < 0`` the series runs on ``y^2 = x^3 + b`` itself, where every real
    point has ``x >= |b|^(1/3)``.  For ``b > 0`` it runs on the curve translated
    by ``x' = x + 2 b^(1/3)``, whose real points have ``x' >= b^(1/3)``.  The
    first ``config.exact_steps`` values of ``x(2^k P)`` come from exact rational
    duplication; later ones from the ``t -> w(t)/z(t)`` recursion with
    ``t = 1/x``.
    """
    if P.is_infinity:
        raise DomainError("the archimedean height is undefined at the point at infinity")
    if b == 0:
        raise DomainError("b must be nonzero")
    ctx = mp_context(config.precision_bits)
    b2, b4, b6, b8, shift = _series_coefficients(ctx, b)
    branch = ArchBranch.NEGATIVE_B if b < 0 else ArchBranch.POSITIVE_B_TRANSLATED

    def to_t(x: Fraction):
        return 1 / (ctx.mpf(x.numerator) / x.denominator + shift)

    x = P.x
    t = to_t(x)
    log_x = -ctx.log(t)
    xs: list[Fraction | None] = [x]
    for _ in range(min(config.exact_steps, config.depth) - 1):
        x = duplicate_x(x, b) if x is not None else None
        xs.append(x)

    slack = ctx.ldexp(ctx.one, 16 - config.precision_bits)
    series = ctx.zero
    zs = []
    weight = ctx.one
    for k in range(config.depth):
        if k < len(xs):
            t = to_t(xs[k]) if xs[k] is not None else ctx.zero
        t2 = t * t
        z = 1 - b4 * t2 - 2 * b6 * t2 * t - b8 * t2 * t2
        if b < 0:
            assert 1 - slack <= z <= 9 + slack, "z(2^k P) left [1, 9]"
        zs.append(z)
        series += weight * ctx.log(abs(z))
        w = 4 * t + b2 * t2 + 2 * b4 * t2 * t + b6 * t2 * t2
        t = w / z
        weight /= 4

    delta_log = ctx.log(432) + 2 * ctx.log(abs(b))
    value = log_x / 2 + series / 8 - delta_log / 12

    four_k = ctx.mpf(4) ** (-config.depth)
    if b < 0:
        tail = ctx.log(9) * NEG_TAIL_CONSTANT.numerator / NEG_TAIL_CONSTANT.denominator * four_k / 8
    else:
        tail = ctx.mpf(POS_TAIL_CONSTANT.numerator) / POS_TAIL_CONSTANT.denominator * four_k / 8
    rounding = (abs(value) + config.depth + delta_log) * ctx.ldexp(ctx.one, 8 - config.precision_bits)
    return ArchHeightResult(value, tail, rounding, branch, tuple(zs), config)
