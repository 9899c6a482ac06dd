"""Explicit Lang-type lower bounds and height-difference bounds for Mordell curves.

Each theorem is a linear expression in ``log|b|``, ``log 2``, ``log 3`` and a
published decimal constant, chosen by the sign of ``b``.  ``verify`` checks a
single point against one bound; ``scan`` runs every applicable bound over a
range of curves and their integral points.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .curve import MordellCurve, RationalPoint
from .heights import canonical_height
from .localheights import DEFAULT_CONFIG, ArchHeightConfig, mp_context
from .numtheory import DomainError, is_cubic_residue, is_quadratic_residue, factor, sixth_power_free
from .reduction import reduction_at


class TheoremId(Enum):
    LANG1 = "lang1"
    LANG2 = "lang2"
    LANG3 = "lang3"
    LANG4 = "lang4"
    HEIGHT_DIFF = "heightdiff"

    @property
    def is_lang(self) -> bool:
        return self is not TheoremId.HEIGHT_DIFF


LANG_THEOREMS = (TheoremId.LANG1, TheoremId.LANG2, TheoremId.LANG3, TheoremId.LANG4)


class TorsionPointError(DomainError):
    pass


@dataclass(frozen=True)
class LinearBound:
    """``log_b*log|b| + log_2*log 2 + log_3*log 3 + constant + cube_root*|b|^(-1/3)``."""

    log_b: Fraction
    log_2: Fraction = Fraction(0)
    log_3: Fraction = Fraction(0)
    constant: Fraction = Fraction(0)
    cube_root: Fraction = Fraction(0)

    def evaluate(self, b: int, ctx):
        def q(r: Fraction):
            return ctx.mpf(r.numerator) / r.denominator

        value = q(self.log_b) * ctx.log(abs(b)) + q(self.log_2) * ctx.log(2) + q(self.log_3) * ctx.log(3)
        value += q(self.constant)
        if self.cube_root:
            value += q(self.cube_root) / ctx.cbrt(abs(b))
        return value


F = Fraction
# (negative b, positive b); decimals are the published constants, kept exact
LANG_BOUNDS = {
    TheoremId.LANG1: (
        LinearBound(F(1, 6), F(-1), F(-1, 2)),
        LinearBound(F(1, 6), F(-2, 3), F(-3, 4), F("-0.006")),
    ),
    TheoremId.LANG2: (
        LinearBound(F(1, 24), F(-1, 4), F(-5, 48)),
        LinearBound(F(1, 24), F(-1, 6), F(-1, 6), F("-0.002")),
    ),
    TheoremId.LANG3: (
        LinearBound(F(1, 18), F(-2, 9), F(-1, 4), F("-0.004")),
        LinearBound(F(1, 18), F(-1, 3), F(-1, 6), F("-0.004")),
    ),
    TheoremId.LANG4: (
        LinearBound(F(1, 36), constant=F("-0.2247")),
        LinearBound(F(1, 36), constant=F("-0.2262")),
    ),
}
# (lower, upper) for h(P)/2 - canonical height
HEIGHT_DIFF_BOUNDS = (
    (
        LinearBound(F(0), log_3=F(-1, 4), constant=F("-0.005")),
        LinearBound(F(1, 6), F(1, 3), F(1, 4)),
    ),
    (
        LinearBound(F(-1, 6), F(-1, 3), constant=F("-0.007"), cube_root=F("-0.08")),
        LinearBound(F(1, 6), F(1, 3), F(1, 4), F("0.004")),
    ),
)


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    reason: str

    def __bool__(self) -> bool:
        return self.applicable


def _tamagawa_above_3(b: int) -> dict[int, int]:
    return {p: reduction_at(b, p).tamagawa for p in factor(b) if p > 3}


def hypotheses(theorem: TheoremId | str, b: int) -> Applicability:
    theorem = TheoremId(theorem)
    if b == 0:
        raise DomainError("b must be nonzero")
    if theorem is TheoremId.HEIGHT_DIFF:
        return Applicability(True, "holds for every nonzero b")
    if sixth_power_free(b).u != 1:
        return Applicability(False, "b is not sixth-power-free")
    if theorem is TheoremId.LANG4:
        return Applicability(True, "b is sixth-power-free")
    c = _tamagawa_above_3(b)
    if theorem is TheoremId.LANG1:
        bad = {p: cp for p, cp in c.items() if cp != 1}
        if bad:
            return Applicability(False, f"Tamagawa numbers above 3 are not all 1: {bad}")
        return Applicability(True, "c_p = 1 for every p > 3")
    if theorem is TheoremId.LANG2:
        # component groups of exponent <= 2: c_p in {1, 2, 4} (4 is Z/2 x Z/2)
        bad = {p: cp for p, cp in c.items() if cp == 3}
        if bad:
            return Applicability(False, f"c_p = 3 at {sorted(bad)}")
        return Applicability(True, "every component group above 3 has exponent at most 2")
    bad = {p: cp for p, cp in c.items() if cp not in (1, 3)}
    if bad:
        return Applicability(False, f"c_p does not divide 3 at {bad}")
    if 3 not in c.values():
        return Applicability(False, "no prime p > 3 has c_p = 3")
    return Applicability(True, "c_p | 3 for every p > 3 and c_p = 3 somewhere")


def lang1_residue_conditions(b: int) -> bool:
    """The residue form of the first theorem's hypothesis, independent of the reduction tables.

    For every ``p > 3`` with ``p^e || b``: ``e = 2`` needs ``b/p^2`` a non-square,
    ``e = 3`` needs ``-b/p^3`` a non-cube, ``e = 4`` needs ``b/p^4`` a non-square.
    """
    for p, e in factor(b).items():
        if p <= 3:
            continue
        r = (-1) ** e * b // p**e
        if e in (2, 4) and is_quadratic_residue(r, p):
            return False
        if e == 3 and is_cubic_residue(r, p):
            return False
    return True


def bound_value(theorem: TheoremId | str, b: int, precision_bits: int = 256):
    """The theorem's bound at ``b``: a lower bound, or ``(lower, upper)`` for the height difference."""
    theorem = TheoremId(theorem)
    if b == 0:
        raise DomainError("b must be nonzero")
    ctx = mp_context(precision_bits)
    side = 0 if b < 0 else 1
    if theorem is TheoremId.HEIGHT_DIFF:
        lo, hi = HEIGHT_DIFF_BOUNDS[side]
        return lo.evaluate(b, ctx), hi.evaluate(b, ctx)
    return LANG_BOUNDS[theorem][side].evaluate(b, ctx)


@dataclass
class BoundReport:
    theorem: TheoremId
    b: int
    point: RationalPoint
    applicable: bool
    reason: str
    bound: object = None  # mpf, or (lower, upper)
    computed: object = None
    gap: object = None  # mpf, or (computed - lower, upper - computed)
    holds: bool | None = None
    error_budget: object = None
    reduced_b: int | None = None
    torsion: bool = False

    @property
    def suspect(self) -> bool:
        """A proved bound failing beyond the numerical budget points to a bug."""
        return self.applicable and self.holds is False

    @property
    def min_gap(self):
        if self.gap is None:
            return None
        return min(self.gap) if isinstance(self.gap, tuple) else self.gap

    def to_dict(self, digits: int = 40) -> dict:
        from mpmath import nstr

        def num(v):
            if v is None:
                return None
            if isinstance(v, tuple):
                return [nstr(e, digits) for e in v]
            return nstr(v, digits)

        return {
            "theorem": self.theorem.value,
            "b": self.b,
            "reduced_b": self.reduced_b,
            "x": None if self.point.is_infinity else str(self.point.x),
            "y": None if self.point.is_infinity else str(self.point.y),
            "torsion": self.torsion,
            "applicable": self.applicable,
            "reason": self.reason,
            "bound": num(self.bound),
            "computed": num(self.computed),
            "gap": num(self.gap),
            "error_budget": num(self.error_budget),
            "holds": self.holds,
            "suspect": self.suspect,
        }


def verify(theorem: TheoremId | str, b: int, P: RationalPoint, config: ArchHeightConfig = DEFAULT_CONFIG) -> BoundReport:
    """Check one point against one theorem.

    Lower bounds concern the sixth-power-free model, so ``b`` and ``P`` are
    reduced first; the height difference uses ``b`` and ``P`` as given.
    """
    theorem = TheoremId(theorem)
    if P.is_infinity:
        raise DomainError("bounds are checked at affine points")
    hb = canonical_height(b, P, config)
    if theorem.is_lang and hb.torsion:
        raise TorsionPointError(f"{P!r} is a torsion point; the lower bounds concern non-torsion points")
    ctx = mp_context(config.precision_bits)
    budget = hb.error_bound + ctx.ldexp(1, 16 - config.precision_bits)
    target_b = b if theorem is TheoremId.HEIGHT_DIFF else hb.reduced_b
    app = hypotheses(theorem, target_b)
    report = BoundReport(theorem, b, P, app.applicable, app.reason, reduced_b=hb.reduced_b, torsion=hb.torsion)
    report.error_budget = budget
    if theorem is TheoremId.HEIGHT_DIFF:
        lo, hi = bound_value(theorem, b, config.precision_bits)
        diff = hb.naive / 2 - hb.canonical
        report.bound, report.computed = (lo, hi), diff
        report.gap = (diff - lo, hi - diff)
    else:
        report.bound = bound_value(theorem, target_b, config.precision_bits)
        report.computed = hb.canonical
        report.gap = hb.canonical - report.bound
    report.holds = bool(report.min_gap > -budget)
    return report


# scanning


@dataclass
class ScanResult:
    reports: list[BoundReport]
    curves: int
    points: int
    summary: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[BoundReport]:
        return [r for r in self.reports if r.suspect]


def _scan_curve(b: int, x_bound: int, theorems: tuple[TheoremId, ...], config: ArchHeightConfig) -> tuple[int, list[BoundReport]]:
    curve = MordellCurve(b)
    points = [P for P in curve.integral_points(x_bound) if P.y >= 0]
    reports = []
    lang = [t for t in theorems if t.is_lang and hypotheses(t, b)]
    for P in points:
        torsion = curve.is_torsion(P)
        for t in theorems:
            if t.is_lang:
                if torsion:
                    continue
                if t not in lang:
                    continue
            reports.append(verify(t, b, P, config))
    return len(points), reports


# values from a private mpmath context do not pickle; ship their raw tuples instead
_REAL_FIELDS = ("bound", "computed", "gap", "error_budget")


def _freeze(report: BoundReport) -> BoundReport:
    for name in _REAL_FIELDS:
        v = getattr(report, name)
        if v is not None:
            setattr(report, name, tuple(e._mpf_ for e in v) if isinstance(v, tuple) else v._mpf_)
    return report


def _thaw(report: BoundReport, ctx) -> BoundReport:
    for name in _REAL_FIELDS:
        v = getattr(report, name)
        if v is None:
            continue
        if isinstance(v[0], tuple):
            setattr(report, name, tuple(ctx.make_mpf(e) for e in v))
        else:
            setattr(report, name, ctx.make_mpf(v))
    return report


def _scan_chunk(args):
    bs, x_bound, theorems, config = args
    out = []
    for b in bs:
        n, reports = _scan_curve(b, x_bound, theorems, config)
        out.append((b, n, [_freeze(r) for r in reports]))
    return out


def scan(
    b_range: tuple[int, int],
    x_bound: int,
    theorems=tuple(TheoremId),
    config: ArchHeightConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> ScanResult:
    """Verify every applicable theorem at every integral point with ``|x| <= x_bound``.

    Curves are reduced to their sixth-power-free model and de-duplicated.
    Points are taken with ``y >= 0``; ``-P`` has the same heights.  Lang
    bounds are skipped at torsion points and on curves failing the hypotheses.
    Reports are sorted by ``(b, x, theorem)``, so output does not depend on ``jobs``.
    """
    bmin, bmax = b_range
    theorems = tuple(TheoremId(t) for t in theorems)
    curves = sorted({sixth_power_free(b).b1 for b in range(bmin, bmax + 1) if b})
    chunks = [curves[i::max(1, jobs) * 8] for i in range(max(1, jobs) * 8)]
    tasks = [(c, x_bound, theorems, config) for c in chunks if c]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for chunk in pool.map(_scan_chunk, tasks) for r in chunk]
    else:
        results = [r for task in tasks for r in _scan_chunk(task)]
    ctx = mp_context(config.precision_bits)
    order = {t: i for i, t in enumerate(TheoremId)}
    reports = sorted(
        (_thaw(r, ctx) for _, _, rs in results for r in rs),
        key=lambda r: (r.b, r.point.x, order[r.theorem]),
    )
    n_points = sum(n for _, n, _ in results)
    return ScanResult(reports, len(curves), n_points, summarize(reports))


def summarize(reports: list[BoundReport]) -> dict:
    """Smallest gap per theorem and sign of ``b``, with counts and failures."""
    out: dict = {}
    for r in reports:
        key = f"{r.theorem.value}:{'neg' if r.b < 0 else 'pos'}"
        entry = out.setdefault(key, {"checked": 0, "failures": 0, "min_gap": None, "at": None})
        entry["checked"] += 1
        entry["failures"] += int(r.suspect)
        g = r.min_gap
        if entry["min_gap"] is None or g < entry["min_gap"]:
            entry["min_gap"], entry["at"] = g, (r.b, str(r.point.x), str(r.point.y))
    return dict(sorted(out.items()))
