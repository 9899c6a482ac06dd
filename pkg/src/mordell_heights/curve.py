"""Mordell curves ``y^2 = x^3 + b`` over the rationals with an exact group law."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import gmpy2
import numpy as np

from .numtheory import (
    DomainError,
    SixthPowerDecomposition,
    integer_root_exact,
    integer_sqrt_exact,
    sixth_power_free,
)


class NotOnCurveError(DomainError):
    pass


@dataclass(frozen=True)
class RationalPoint:
    """An affine rational point, or the point at infinity when ``x`` is None."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("both coordinates must be given, or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = RationalPoint()


def point(x, y) -> RationalPoint:
    return RationalPoint(Fraction(x), Fraction(y))


class TorsionGroup(Enum):
    Z6 = 6
    Z3 = 3
    Z2 = 2
    TRIVIAL = 1


@dataclass(frozen=True)
class TorsionStructure:
    group: TorsionGroup
    points: tuple[RationalPoint, ...]

    @property
    def order(self) -> int:
        return self.group.value


@dataclass(frozen=True)
class MordellCurve:
    b: int
    decomposition: SixthPowerDecomposition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.b, int) or self.b == 0:
            raise DomainError("b must be a nonzero integer")
        object.__setattr__(self, "decomposition", sixth_power_free(self.b))

    @property
    def discriminant(self) -> int:
        return -432 * self.b * self.b

    @property
    def is_sixth_power_free(self) -> bool:
        return self.decomposition.u == 1

    def reduced(self) -> MordellCurve:
        return MordellCurve(self.decomposition.b1)

    def to_reduced(self, P: RationalPoint) -> RationalPoint:
        """Image of ``P`` under ``(x, y) -> (x/u^2, y/u^3)`` on the sixth-power-free model."""
        if P.is_infinity:
            return P
        u = self.decomposition.u
        return RationalPoint(P.x / u**2, P.y / u**3)

    def from_reduced(self, P: RationalPoint) -> RationalPoint:
        if P.is_infinity:
            return P
        u = self.decomposition.u
        return RationalPoint(P.x * u**2, P.y * u**3)

    # group law

    def contains(self, P: RationalPoint) -> bool:
        return P.is_infinity or P.y * P.y == P.x**3 + self.b

    def _check(self, *points: RationalPoint) -> None:
        for P in points:
            if not self.contains(P):
                raise NotOnCurveError(f"{P!r} is not on y^2 = x^3 + {self.b}")

    def negate(self, P: RationalPoint) -> RationalPoint:
        self._check(P)
        return P if P.is_infinity else RationalPoint(P.x, -P.y)

    def add(self, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
        self._check(P, Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return INFINITY
            return self.double(P)
        slope = (Q.y - P.y) / (Q.x - P.x)
        x3 = slope * slope - P.x - Q.x
        return RationalPoint(x3, slope * (P.x - x3) - P.y)

    def double(self, P: RationalPoint) -> RationalPoint:
        self._check(P)
        if P.is_infinity or P.y == 0:
            return INFINITY
        slope = 3 * P.x * P.x / (2 * P.y)
        x3 = slope * slope - 2 * P.x
        return RationalPoint(x3, slope * (P.x - x3) - P.y)

    def multiply(self, n: int, P: RationalPoint) -> RationalPoint:
        if n < 0:
            return self.multiply(-n, self.negate(P))
        result, addend = INFINITY, P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.double(addend)
            n >>= 1
        return result

    # torsion

    def torsion_structure(self) -> TorsionStructure:
        """Full rational torsion of a sixth-power-free Mordell curve (Fueter's classification)."""
        if not self.is_sixth_power_free:
            raise DomainError(f"b = {self.b} is not sixth-power-free")
        b = self.b
        if b == 1:
            pts = (point(2, 3), point(2, -3), point(0, 1), point(0, -1), point(-1, 0))
            return TorsionStructure(TorsionGroup.Z6, pts)
        t = integer_sqrt_exact(b) if b > 0 else None
        if t is not None:
            return TorsionStructure(TorsionGroup.Z3, (point(0, t), point(0, -t)))
        if b == -432:
            return TorsionStructure(TorsionGroup.Z3, (point(12, 36), point(12, -36)))
        t = integer_root_exact(b, 3)
        if t is not None:
            return TorsionStructure(TorsionGroup.Z2, (point(-t, 0),))
        return TorsionStructure(TorsionGroup.TRIVIAL, ())

    def is_torsion(self, P: RationalPoint) -> bool:
        self._check(P)
        if P.is_infinity:
            return True
        return self.to_reduced(P) in self.reduced().torsion_structure().points

    # integral points

    def integral_points(self, x_bound: int) -> list[RationalPoint]:
        """All integral points with ``|x| <= x_bound``, sorted by ``(x, y)``."""
        if x_bound < 1:
            raise DomainError("x_bound must be positive")
        b = self.b
        # x^3 + b >= 0 forces x >= -b^(1/3)
        root = int(gmpy2.iroot(gmpy2.mpz(abs(b)), 3)[0])
        lo = max(-x_bound, -root - 1 if b > 0 else root)
        if lo > x_bound:
            return []
        xs = range(lo, x_bound + 1)
        if x_bound**3 + abs(b) < 2**52:
            candidates = _square_candidates_numpy(b, lo, x_bound)
        else:
            candidates = xs
        found = []
        for x in candidates:
            x = int(x)
            s = x**3 + b
            if s < 0:
                continue
            y = integer_sqrt_exact(s)
            if y is None:
                continue
            found.append(point(x, -y))
            if y:
                found.append(point(x, y))
        return sorted(found, key=lambda P: (P.x, P.y))


def _square_candidates_numpy(b: int, lo: int, hi: int):
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    vals = xs**3 + b
    ok = vals >= 0
    xs, vals = xs[ok], vals[ok]
    roots = np.floor(np.sqrt(vals.astype(np.float64)))
    # float sqrt may be off by one near 2^52; candidates are re-checked exactly
    near = np.zeros(len(xs), dtype=bool)
    for delta in (-1, 0, 1):
        r = (roots + delta).astype(np.int64)
        near |= r * r == vals
    return xs[near].tolist()


def find_integral_points(curve: MordellCurve, x_bound: int) -> list[RationalPoint]:
    return curve.integral_points(x_bound)


def naive_height(P: RationalPoint, ctx=None):
    """``log max(|num x|, den x)``; zero at infinity.

    Returns a float, or an mpf of ``ctx`` when a context is given.
    """
    if P.is_infinity:
        return 0.0 if ctx is None else ctx.zero
    m = max(abs(P.x.numerator), P.x.denominator)
    if ctx is None:
        return math.log(m)
    return ctx.log(ctx.mpf(m))
