"""Reduction types of Mordell curves: Tate's algorithm worked out for ``y^2 = x^3 + b``.

The three entry points ``reduction_at`` (p > 3), ``reduction_at_3`` and
``reduction_at_2`` return the Kodaira symbol and Tamagawa number selected by
the valuation of ``b`` and a residue condition (p > 3) or by ``b`` modulo a
power of the prime (p = 2, 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .curve import RationalPoint
from .numtheory import (
    DomainError,
    is_cubic_residue,
    is_quadratic_residue,
    ord_p,
    ord_p_rational,
    prime_divisors,
    sixth_power_free,
)


class KodairaType(Enum):
    I0 = "I0"
    II = "II"
    III = "III"
    IV = "IV"
    I0star = "I0*"
    IVstar = "IV*"
    IIIstar = "III*"
    IIstar = "II*"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ReductionData:
    prime: int
    kodaira: KodairaType
    tamagawa: int


def _valuation_or_six(b: int, p: int) -> int:
    e = ord_p(b, p)
    if e >= 6:
        raise DomainError(f"{p}^6 divides b = {b}")
    return e


def reduction_at(b: int, p: int) -> ReductionData:
    """Kodaira type and Tamagawa number at a prime ``p > 3``."""
    if p <= 3:
        raise DomainError("reduction_at needs p > 3; use reduction_at_2/3")
    e = _valuation_or_six(b, p)
    K = KodairaType
    if e == 0:
        return ReductionData(p, K.I0, 1)
    if e == 1:
        return ReductionData(p, K.II, 1)
    if e == 2:
        return ReductionData(p, K.IV, 3 if is_quadratic_residue(b // p**2, p) else 1)
    if e == 3:
        if not is_cubic_residue(-b // p**3, p):
            return ReductionData(p, K.I0star, 1)
        return ReductionData(p, K.I0star, 4 if p % 6 == 1 else 2)
    if e == 4:
        return ReductionData(p, K.IVstar, 3 if is_quadratic_residue(b // p**4, p) else 1)
    return ReductionData(p, K.IIstar, 1)


def reduction_at_3(b: int) -> ReductionData:
    _valuation_or_six(b, 3)
    K = KodairaType
    if b % 9 in (1, 8):
        return ReductionData(3, K.III, 2)
    if b % 9:
        return ReductionData(3, K.II, 1)
    if b % 27 == 9:
        return ReductionData(3, K.IV, 3)
    if b % 27 == 18:
        return ReductionData(3, K.IV, 1)
    r = b % 243
    if r in (54, 81, 108):
        return ReductionData(3, K.IVstar, 3)
    if r in (135, 162, 189):
        return ReductionData(3, K.IVstar, 1)
    if r in (27, 216):
        return ReductionData(3, K.IIIstar, 2)
    return ReductionData(3, K.IIstar, 1)


def reduction_at_2(b: int) -> ReductionData:
    """Reduction at 2; for ``b = 16 (mod 64)`` this is the type of the minimal model."""
    _valuation_or_six(b, 2)
    K = KodairaType
    if b % 64 == 16:
        return ReductionData(2, K.I0, 1)
    if b % 4 in (2, 3):
        return ReductionData(2, K.II, 1)
    if b % 8 == 5:
        return ReductionData(2, K.IV, 1)
    if b % 8 == 1:
        return ReductionData(2, K.IV, 3)
    if b % 16 in (8, 12):
        return ReductionData(2, K.I0star, 2)
    if b % 32 == 4:
        return ReductionData(2, K.IVstar, 3)
    if b % 32 == 20:
        return ReductionData(2, K.IVstar, 1)
    return ReductionData(2, K.IIstar, 1)


def reduction_data(b: int, p: int) -> ReductionData:
    if p == 2:
        return reduction_at_2(b)
    if p == 3:
        return reduction_at_3(b)
    return reduction_at(b, p)


def bad_primes_and_six(b: int) -> list[int]:
    return sorted({2, 3} | set(prime_divisors(b)))


def reduction_table(b: int) -> list[ReductionData]:
    """Reduction data at 2, 3 and every prime dividing ``b``."""
    if b == 0:
        raise DomainError("b must be nonzero")
    return [reduction_data(b, p) for p in bad_primes_and_six(b)]


def _ord_positive(x: Fraction, p: int) -> bool:
    return x == 0 or ord_p_rational(x, p) > 0


def is_singular_mod_p(b: int, P: RationalPoint, p: int) -> bool:
    """Whether ``P`` reduces to the singular point of the minimal model modulo ``p``.

    False wherever the reduction is good, including ``p = 2`` with ``b = 16 (mod 64)``.
    """
    if P.is_infinity:
        raise DomainError("the point at infinity never reduces to the singular point")
    if p == 2 and b % 64 == 16:
        return False
    if p == 2:
        return _ord_positive(P.x, 2)
    if p == 3:
        return _ord_positive(P.x + b, 3)
    if b % p:
        return False
    return _ord_positive(P.x, p) and _ord_positive(P.y, p)


class ModelKind(Enum):
    SHORT_WEIERSTRASS = "ShortWeierstrass"
    TRANSLATED_16_MOD_64 = "Translated16Mod64"


@dataclass(frozen=True)
class MinimalModel:
    kind: ModelKind
    b1: int

    @property
    def a_invariants(self) -> tuple[int, int, int, int, int]:
        if self.kind is ModelKind.TRANSLATED_16_MOD_64:
            return (0, 0, 1, 0, (self.b1 - 16) // 64)
        return (0, 0, 0, 0, self.b1)

    @property
    def discriminant(self) -> int:
        d = -432 * self.b1 * self.b1
        return d // 2**12 if self.kind is ModelKind.TRANSLATED_16_MOD_64 else d

    @property
    def equation(self) -> str:
        a6 = self.a_invariants[4]
        lhs = "y^2 + y" if self.kind is ModelKind.TRANSLATED_16_MOD_64 else "y^2"
        sign = "-" if a6 < 0 else "+"
        return f"{lhs} = x^3 {sign} {abs(a6)}"


def minimal_model(b: int) -> MinimalModel:
    b1 = sixth_power_free(b).b1
    kind = ModelKind.TRANSLATED_16_MOD_64 if b1 % 64 == 16 else ModelKind.SHORT_WEIERSTRASS
    return MinimalModel(kind, b1)
