"""One-parameter families of curves and points on which the bounds are nearly attained."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .bounds import TheoremId, hypotheses
from .curve import MordellCurve, RationalPoint, point
from .numtheory import DomainError, is_power_free, is_sixth_power_free, nearest_integer_sqrt, ord_p


class Sign(Enum):
    NEG = "neg"
    POS = "pos"


@dataclass(frozen=True)
class FamilyInstance:
    theorem: TheoremId
    sign: Sign
    parameter: int
    b: int
    point: RationalPoint
    end: str | None = None  # "upper"/"lower" for the height-difference families
    side_conditions: dict = field(default_factory=dict)

    @property
    def usable(self) -> bool:
        """All side conditions the construction assumes rather than guarantees hold."""
        return all(self.side_conditions.values())

    @property
    def hypotheses_hold(self) -> bool:
        return hypotheses(self.theorem, self.b).applicable


def _lang1(sign: Sign, n: int):
    if sign is Sign.POS:
        b = 46656 * n * n + 46656 * n + 13392
        return b, point(-12, 54 * (4 * n + 2)), {}
    b = -46656 * n**3 - 93312 * n**2 - 62208 * n - 2160
    return b, point(36 * n + 24, 108), {}


def _lang2(sign: Sign, n: int):
    if sign is Sign.POS:
        m = 6 * n + 1
        return 432 * (162 * n + 31) * m**3, point(-72 * n - 12, 108 * m * m), {}
    if n % 2 == 0:
        raise DomainError("the negative family needs an odd parameter")
    # nearest integer to 12 n^3 / (3 + 2 sqrt 3) = sqrt(192 n^6) - 12 n^3
    b2 = nearest_integer_sqrt(192 * n**6) - 12 * n**3
    a = 12 * n**3 - b2
    b = -432 * a**3 * (3 * b2 - 4 * n**3)
    side = {
        "gcd(b1, b2) = 1": math.gcd(n, b2) == 1,
        "2^6 does not divide b": ord_p(b, 2) < 6,
        "3^6 does not divide b": ord_p(b, 3) < 6,
    }
    return b, point(24 * n * a, 36 * a * a), side


def _lang3(sign: Sign, n: int):
    # y-coordinate 108 (2 n + 1) b2 is what puts the point on the curve
    if sign is Sign.NEG:
        b2 = 36 * n * n + 36 * n + 11
        b = -432 * (b2 + 6) * b2 * b2
    else:
        b2 = 24 * n * n + 24 * n + 5
        b = 216 * (b2 + 9) * b2 * b2
    return b, point(12 * b2, 108 * (2 * n + 1) * b2), {}


def _lang4(sign: Sign, k: int):
    b1 = 54 * k - 1
    if sign is Sign.NEG:
        b2, b3 = 720 * k - 1, 942 * k - 1
        b = -432 * b1 * b2 * b2 * b3**3
    else:
        b2, b3 = 720 * k + 1, 978 * k + 1
        b = 432 * b1 * b2 * b2 * b3**3
    side = {
        "b1 square-free": is_power_free(b1, 2),
        "b3 square-free": is_power_free(b3, 2),
        "b2 cube-free": is_power_free(b2, 3),
        "b1, b2, b3 pairwise coprime": math.gcd(b1, b2) == math.gcd(b1, b3) == math.gcd(b2, b3) == 1,
    }
    return b, point(12 * b2 * b3, 36 * b2 * b3 * b3), side


def _height_diff(sign: Sign, n: int, end: str):
    if end == "upper" and sign is Sign.NEG:
        b1 = 2160 * n * n + 1350 * n + 211
        b = -(2**2) * 3**3 * 5**3 * b1 * b1
        return b, point(60 * b1, 1350 * b1 * (16 * n + 5)), {"b1 cube-free": is_power_free(b1, 3)}
    if end == "upper":
        b1 = (6 * n + 11) * (12 * n + 23)
        return b1 * b1, point(2 * b1, 3 * b1 * (8 * n + 15)), {"b1 cube-free": is_power_free(b1, 3)}
    if end == "lower" and sign is Sign.POS:
        return (3 * n + 1) ** 2 + 1, point(-1, 3 * n + 1), {}
    if end == "lower":
        return 1 - (2 * n + 1) ** 3, point(2 * n + 1, 1), {}
    raise DomainError(f"end must be 'upper' or 'lower', not {end!r}")


def family(theorem: TheoremId | str, sign: Sign | str, parameter: int, end: str | None = None) -> FamilyInstance:
    """The family member at ``parameter``; side conditions are checked and recorded, not enforced."""
    theorem, sign = TheoremId(theorem), Sign(sign)
    if parameter < 1:
        raise DomainError("parameter must be at least 1")
    if theorem is TheoremId.HEIGHT_DIFF:
        end = end or "upper"
        b, P, side = _height_diff(sign, parameter, end)
    else:
        if end is not None:
            raise DomainError("only the height-difference families take an end")
        maker = {TheoremId.LANG1: _lang1, TheoremId.LANG2: _lang2, TheoremId.LANG3: _lang3, TheoremId.LANG4: _lang4}
        b, P, side = maker[theorem](sign, parameter)
    if not MordellCurve(b).contains(P):
        raise AssertionError(f"family point {P!r} is not on y^2 = x^3 + {b}")
    side = {"b sixth-power-free": is_sixth_power_free(b), **side}
    return FamilyInstance(theorem, sign, parameter, b, P, end, side)
