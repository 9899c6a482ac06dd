import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mordell_heights.bounds import TheoremId, bound_value, verify
from mordell_heights.curve import MordellCurve, point
from mordell_heights.families import Sign, family
from mordell_heights.heights import canonical_height
from mordell_heights.numtheory import DomainError

FAMILIES = [
    ("lang1", "pos", None),
    ("lang1", "neg", None),
    ("lang2", "pos", None),
    ("lang2", "neg", None),
    ("lang3", "pos", None),
    ("lang3", "neg", None),
    ("lang4", "pos", None),
    ("lang4", "neg", None),
    ("heightdiff", "pos", "upper"),
    ("heightdiff", "neg", "upper"),
    ("heightdiff", "pos", "lower"),
    ("heightdiff", "neg", "lower"),
]


def test_family_examples():
    f = family("lang1", "pos", 1)
    assert (f.b, f.point) == (106704, point(-12, 324))
    f = family("lang1", "neg", 1)
    assert (f.b, f.point) == (-204336, point(60, 108))
    assert 60**3 - 204336 == 108**2


def test_lang3_negative_family_point():
    f = family("lang3", "neg", 1)
    assert f.b == -432 * 89 * 83**2
    assert f.point == point(996, 26892)
    # the y-coordinate 3 * 26892 = 80676 does not lie on the curve
    assert not MordellCurve(f.b).contains(point(996, 80676))


def test_lang2_positive_family_doubles_to_the_stated_point():
    for n in (1, 2, 7):
        f = family("lang2", "pos", n)
        assert MordellCurve(f.b).double(f.point).x == 144 * n + 28
        assert f.b % 64 == 16 and f.b % 243 == 27


def test_lang2_negative_family_needs_odd_parameter():
    with pytest.raises(DomainError):
        family("lang2", "neg", 2)
    n = 3
    f = family("lang2", "neg", n)
    b2 = 12 * n**3 - f.point.x / (24 * n)
    assert MordellCurve(f.b).double(f.point).x == 48 * n * b2


def test_parameter_and_end_validation():
    with pytest.raises(DomainError):
        family("lang1", "pos", 0)
    with pytest.raises(DomainError):
        family("lang1", "pos", 1, end="upper")
    with pytest.raises(DomainError):
        family("heightdiff", "pos", 1, end="middle")
    assert family("heightdiff", "pos", 1).end == "upper"


def test_lang4_side_conditions_are_reported():
    f = family("lang4", "neg", 24)
    # 37 divides both 54k - 1 and 942k - 1 at k = 24
    assert not f.side_conditions["b1, b2, b3 pairwise coprime"]
    assert not f.usable
    assert family("lang4", "neg", 1).usable


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 10**6))
def test_family_points_lie_on_their_curves(member, n):
    theorem, sign, end = member
    if theorem == "lang2" and sign == "neg" and n % 2 == 0:
        n += 1
    f = family(theorem, sign, n, end)
    assert MordellCurve(f.b).contains(f.point)
    assert (f.b < 0) == (f.sign is Sign.NEG)


@pytest.mark.parametrize("theorem, sign, end", FAMILIES)
def test_small_family_members_satisfy_their_theorem(theorem, sign, end):
    for n in (1, 3, 5):
        f = family(theorem, sign, n, end)
        if not (f.usable and f.hypotheses_hold):
            continue
        r = verify(f.theorem, f.b, f.point)
        assert r.holds and not r.suspect


def test_lang1_positive_family_approaches_the_bound():
    gaps = []
    for n in (10, 100, 1000, 10**4):
        f = family("lang1", "pos", n)
        gaps.append(canonical_height(f.b, f.point).canonical - bound_value(TheoremId.LANG1, f.b))
    assert gaps == sorted(gaps, reverse=True)
    assert 0.006 - 1e-3 < gaps[-1] < 0.006 + 5e-3


def test_lang1_negative_family_is_sharp():
    f = family("lang1", "neg", 1000)
    gap = canonical_height(f.b, f.point).canonical - bound_value(TheoremId.LANG1, f.b)
    assert 0 < gap < 1e-6


def test_lang2_negative_family_is_sharp():
    f = family("lang2", "neg", 101)
    assert f.usable and f.hypotheses_hold
    gap = canonical_height(f.b, f.point).canonical - bound_value(TheoremId.LANG2, f.b)
    assert 0 < gap < 1e-10


@pytest.mark.parametrize(
    "sign, end, slack",
    [("neg", "upper", 0), ("pos", "upper", 0.004), ("neg", "lower", 0.005), ("pos", "lower", 0.007)],
)
def test_height_difference_families_approach_the_interval_ends(sign, end, slack):
    side = 1 if end == "upper" else 0
    gaps = []
    for n in (100, 10**4):
        f = family("heightdiff", sign, n, end)
        gaps.append(verify(TheoremId.HEIGHT_DIFF, f.b, f.point).gap[side])
    assert gaps[1] < gaps[0]
    assert slack <= gaps[1] < slack + 1e-4


def test_lang2_positive_family_stays_a_sixth_of_log_3_above_the_bound():
    # 2P misses the worst 3-adic case (x(2P) is prime to 3), so the gap tends to (1/6) log 3 + 0.002
    f = family("lang2", "pos", 10**4)
    gap = canonical_height(f.b, f.point).canonical - bound_value(TheoremId.LANG2, f.b)
    assert abs(gap - (math.log(3) / 6 + 0.002)) < 1e-3
