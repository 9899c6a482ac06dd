"""Exact integer and rational helpers: valuations, residue tests, sixth powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from sympy import factorint, isprime


class DomainError(ValueError):
    """Raised when an input lies outside the mathematical domain of an operation."""


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise DomainError(f"{p!r} is not a prime")


def ord_p(n: int, p: int) -> int:
    """Return the largest ``e`` with ``p**e`` dividing ``n``.

    Zero is rejected rather than mapped to infinity; callers branch on it first.
    """
    _require_prime(p)
    if n == 0:
        raise DomainError("ord_p(0) is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def ord_p_rational(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise DomainError("ord_p(0) is undefined")
    return ord_p(x.numerator, p) - ord_p(x.denominator, p)


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{p: e}``; empty for ``|n| == 1``."""
    if n == 0:
        raise DomainError("cannot factor 0")
    n = abs(n)
    if n == 1:
        return {}
    return dict(_factor_cached(n))


def prime_divisors(n: int) -> list[int]:
    return sorted(factor(n))


@dataclass(frozen=True)
class SixthPowerDecomposition:
    """``b == u**6 * b1`` with ``b1`` sixth-power-free and ``u > 0``."""

    b1: int
    u: int

    @property
    def b(self) -> int:
        return self.u**6 * self.b1


def sixth_power_free(b: int) -> SixthPowerDecomposition:
    if b == 0:
        raise DomainError("b must be nonzero")
    u = 1
    b1 = b
    for p, e in factor(b).items():
        k = e // 6
        if k:
            u *= p**k
            b1 //= p ** (6 * k)
    return SixthPowerDecomposition(b1=b1, u=u)


def is_sixth_power_free(b: int) -> bool:
    return sixth_power_free(b).u == 1


def is_power_free(n: int, k: int) -> bool:
    """True iff no prime power ``p**k`` divides ``n`` (``k=2`` square-free, ``k=3`` cube-free)."""
    return all(e < k for e in factor(n).values())


def is_quadratic_residue(a: int, p: int) -> bool:
    """Euler's criterion for an odd prime ``p`` and ``a`` coprime to ``p``."""
    _require_prime(p)
    if p == 2:
        raise DomainError("p must be odd")
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    return pow(a % p, (p - 1) // 2, p) == 1


def is_cubic_residue(a: int, p: int) -> bool:
    """True iff ``x**3 = a (mod p)`` is solvable; always true when ``p = 2 (mod 3)``."""
    _require_prime(p)
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    return pow(a % p, (p - 1) // math.gcd(3, p - 1), p) == 1


def integer_sqrt_exact(n: int) -> int | None:
    if n < 0:
        raise DomainError("negative input")
    s = math.isqrt(n)
    return s if s * s == n else None


def integer_root_exact(n: int, k: int) -> int | None:
    """Exact integer ``k``-th root of ``n`` (negative ``n`` allowed for odd ``k``), else None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root_exact(-n, k)
        return None if r is None else -r
    root, exact = gmpy2.iroot(gmpy2.mpz(n), k)
    return int(root) if exact else None


def nearest_integer_sqrt(n: int) -> int:
    """Nearest integer to ``sqrt(n)`` for ``n >= 0``; ties cannot occur for integers."""
    s = math.isqrt(n)
    return s + 1 if n - s * s > s else s
