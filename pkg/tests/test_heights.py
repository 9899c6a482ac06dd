import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mordell_heights.bounds import TheoremId, bound_value
from mordell_heights.curve import INFINITY, MordellCurve, NotOnCurveError, point
from mordell_heights.heights import (
    MAX_ORACLE_DOUBLINGS,
    canonical_height,
    height_difference,
    limit_oracle,
    x_of_multiple,
)
from mordell_heights.localheights import ArchHeightConfig, mp_context
from mordell_heights.numtheory import DomainError

ctx = mp_context(256)


def test_canonical_height_examples():
    assert canonical_height(1, point(2, 3)).canonical == 0
    assert canonical_height(-432, point(12, 36)).canonical == 0
    hb = canonical_height(-2, point(3, 5))
    assert abs(hb.canonical - limit_oracle(-2, point(3, 5), 8)) < 1e-5
    assert abs(hb.canonical - hb.arch.value - hb.nonarch.evaluate(ctx)) == 0
    assert hb.canonical >= -hb.error_bound
    assert canonical_height(5, INFINITY).canonical == 0


def test_canonical_height_rejects_points_off_the_curve():
    with pytest.raises(NotOnCurveError):
        canonical_height(1, point(1, 1))


def test_non_sixth_power_free_b_is_reduced():
    hb = canonical_height(128, point(-4, 8))
    assert (hb.reduced_b, hb.scale, hb.reduced_point) == (2, 2, point(-1, 1))
    assert hb.canonical == canonical_height(2, point(-1, 1)).canonical
    # the naive height is taken on the model as given
    assert abs(hb.naive - ctx.log(4)) < 1e-70


def test_limit_oracle_examples():
    P = point(3, 5)
    assert abs(limit_oracle(-2, P, 0) - ctx.log(3) / 2) < 1e-70
    assert abs(limit_oracle(-2, P, 1) - ctx.log(129) / 8) < 1e-70
    assert limit_oracle(1, point(2, 3), 5) == 0
    with pytest.raises(DomainError):
        limit_oracle(-2, P, MAX_ORACLE_DOUBLINGS + 1)
    with pytest.raises(NotOnCurveError):
        limit_oracle(1, point(1, 1), 2)


def test_x_of_multiple_matches_group_law():
    E = MordellCurve(17)
    P = point(-2, 3)
    Q = P
    for n in range(1, 5):
        Q = E.double(Q)
        assert x_of_multiple(17, P.x, n) == Q.x
    assert x_of_multiple(-1331, Fraction(11), 1) is None


def test_limit_oracle_converges_towards_canonical_height():
    b, P = 17, point(-2, 3)
    h = canonical_height(b, P).canonical
    errors = [abs(limit_oracle(b, P, n) - h) for n in (2, 4, 6, 8)]
    assert errors[-1] < 1e-5
    # the error shrinks like 4^-n up to bounded oscillation
    assert errors[-1] < errors[0]


def test_height_difference_examples():
    for t in (2, 3, 10):
        assert height_difference(t * t, point(0, t)) == 0
    for b1 in (2, 3, 7):
        b = b1**3
        assert abs(height_difference(b, point(-b1, 0)) - ctx.log(b) / 6) < 1e-60
    hb = canonical_height(-2, point(3, 5))
    assert abs(height_difference(-2, point(3, 5)) - (ctx.log(3) / 2 - hb.canonical)) < 1e-70
    with pytest.raises(DomainError):
        height_difference(-2, INFINITY)


def test_duplication(height_pair):
    b, P = height_pair
    E = MordellCurve(b)
    h1 = canonical_height(b, P)
    h2 = canonical_height(b, E.double(P))
    assert abs(h2.canonical - 4 * h1.canonical) < 2 * (h2.error_bound + 4 * h1.error_bound) + 1e-12


def test_limit_definition(height_pair):
    b, P = height_pair
    assert abs(canonical_height(b, P).canonical - limit_oracle(b, P, 8)) < 1e-4


def test_negation_invariance(height_pair):
    b, P = height_pair
    assert canonical_height(b, P).canonical == canonical_height(b, MordellCurve(b).negate(P)).canonical


def test_positive_on_non_torsion(height_pair):
    b, P = height_pair
    assert canonical_height(b, P).canonical > 0


def test_height_difference_sandwich(height_pair):
    b, P = height_pair
    lo, hi = bound_value(TheoremId.HEIGHT_DIFF, b)
    d = height_difference(b, P)
    assert lo < d < hi


def test_quadratic_form_on_small_multiples():
    E = MordellCurve(-11)
    P = point(3, 4)
    h = canonical_height(-11, P).canonical
    for n in (3, 5):
        Q = E.multiply(n, P)
        assert abs(canonical_height(-11, Q).canonical - n * n * h) < 1e-20


def test_parallelogram_law():
    E = MordellCurve(-26)
    P, Q = point(3, 1), point(35, 207)
    assert E.contains(Q)
    hs = [canonical_height(-26, R).canonical for R in (E.add(P, Q), E.add(P, E.negate(Q)), P, Q)]
    assert abs(hs[0] + hs[1] - 2 * hs[2] - 2 * hs[3]) < 1e-20


@settings(max_examples=40, deadline=None)
@given(st.integers(-60, 60), st.integers(1, 400))
def test_random_integral_points(a, c):
    b = c * c - a**3
    if b == 0:
        return
    E = MordellCurve(b)
    P = point(a, c)
    hb = canonical_height(b, P)
    if hb.torsion:
        assert hb.canonical == 0 and abs(hb.analytic) < 1e-20
        return
    assert hb.canonical > 0
    Q = E.double(P)
    assert abs(canonical_height(b, Q).canonical - 4 * hb.canonical) < 1e-12
    assert abs(hb.canonical - limit_oracle(b, P, 6)) < 4.0 ** -6 * (math.log(abs(b)) + 3)


def test_precision_is_explicit():
    lo = canonical_height(-2, point(3, 5), ArchHeightConfig(precision_bits=80, depth=20))
    hi = canonical_height(-2, point(3, 5), ArchHeightConfig(precision_bits=400, depth=60))
    assert abs(lo.canonical - hi.canonical) < lo.error_bound
