"""Reduction rows and witness construction shared by the reduction and acceptance tests.

Witnesses are chosen by brute-force enumeration of squares and cubes mod p,
independent of the residue tests in the library.
"""

from mordell_heights.reduction import KodairaType as K

LARGE_PRIMES = (5, 7, 11, 13)


def _squares(p):
    return {x * x % p for x in range(1, p)}


def _cubes(p):
    return {x**3 % p for x in range(1, p)}


def _first(p, sign, pred):
    """Smallest ``m`` coprime to ``p`` with ``pred(sign * m mod p)``, returned as ``sign * m``."""
    m = next(m for m in range(1, 10 * p) if m % p and pred(sign * m % p))
    return sign * m


def _any(r):
    return True


# (row label, ord_p(b), condition on the residue of the cofactor, prime filter, expected)
# b = cofactor * p^e; the cubic rows test -b/p^3, hence the negated residue
LARGE_PRIME_ROWS = [
    ("ord 0", 0, _any, lambda p: True, (K.I0, 1)),
    ("ord 1", 1, _any, lambda p: True, (K.II, 1)),
    ("ord 2, residue", 2, lambda p, r: r in _squares(p), lambda p: True, (K.IV, 3)),
    ("ord 2, non-residue", 2, lambda p, r: r not in _squares(p), lambda p: True, (K.IV, 1)),
    ("ord 3, cubic non-residue", 3, lambda p, r: (-r) % p not in _cubes(p), lambda p: p % 6 == 1, (K.I0star, 1)),
    ("ord 3, p = 5 mod 6, cubic residue", 3, lambda p, r: (-r) % p in _cubes(p), lambda p: p % 6 == 5, (K.I0star, 2)),
    ("ord 3, p = 1 mod 6, cubic residue", 3, lambda p, r: (-r) % p in _cubes(p), lambda p: p % 6 == 1, (K.I0star, 4)),
    ("ord 4, residue", 4, lambda p, r: r in _squares(p), lambda p: True, (K.IVstar, 3)),
    ("ord 4, non-residue", 4, lambda p, r: r not in _squares(p), lambda p: True, (K.IVstar, 1)),
    ("ord 5", 5, _any, lambda p: True, (K.IIstar, 1)),
]


def large_prime_witnesses():
    """``(label, p, b, expected)`` for every row, every test prime the row admits, and both signs of b."""
    out = []
    for label, e, cond, admits, expected in LARGE_PRIME_ROWS:
        for p in LARGE_PRIMES:
            if not admits(p):
                continue
            for sign in (1, -1):
                pred = (lambda r: True) if cond is _any else (lambda r, p=p, cond=cond: cond(p, r))
                out.append((label, p, _first(p, sign, pred) * p**e, expected))
    return out


# (residues, modulus, expected); every residue of every row gets a witness
PRIME_3_ROWS = [
    ((2, 3, 4, 5, 6, 7), 9, (K.II, 1)),
    ((1, 8), 9, (K.III, 2)),
    ((9,), 27, (K.IV, 3)),
    ((18,), 27, (K.IV, 1)),
    ((54, 81, 108), 243, (K.IVstar, 3)),
    ((135, 162, 189), 243, (K.IVstar, 1)),
    ((27, 216), 243, (K.IIIstar, 2)),
    ((0,), 243, (K.IIstar, 1)),
]

PRIME_2_ROWS = [
    ((16,), 64, (K.I0, 1)),
    ((2, 3), 4, (K.II, 1)),
    ((5,), 8, (K.IV, 1)),
    ((1,), 8, (K.IV, 3)),
    ((8, 12), 16, (K.I0star, 2)),
    ((4,), 32, (K.IVstar, 3)),
    ((20,), 32, (K.IVstar, 1)),
    ((32, 48), 64, (K.IIstar, 1)),
]


def congruence_witnesses(rows, p):
    """Several ``b`` per residue class, positive and negative, none divisible by ``p^6``."""
    out = []
    for residues, modulus, expected in rows:
        for r in residues:
            for k in (0, 1, 5, -1, -3):
                b = r + k * modulus
                if b == 0 or b % p**6 == 0:
                    continue
                out.append((r, modulus, b, expected))
    return out
