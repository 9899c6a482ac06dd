from fractions import Fraction

import pytest

from mordell_heights.curve import MordellCurve, point
from mordell_heights.families import family

# non-torsion (b, P) pairs shared by the duplication and limit-oracle checks
BASE_PAIRS = [
    (-2, point(3, 5)),
    (2, point(-1, 1)),
    (-4, point(2, 2)),
    (17, point(-2, 3)),
    (-2, point(Fraction(129, 100), Fraction(-383, 1000))),
    (-11, point(3, 4)),
    (-26, point(3, 1)),
    (3, point(1, 2)),
    (8, point(1, 3)),
    (-7, point(2, 1)),
    (15, point(1, 4)),
    (-15, point(4, 7)),
    (128, point(-4, 8)),
    (-1330, point(11, 1)),
    (24, point(1, 5)),
]

FAMILY_ARGS = [
    ("lang1", "pos", 1, None),
    ("lang1", "neg", 1, None),
    ("lang1", "pos", 2, None),
    ("lang2", "pos", 1, None),
    ("lang2", "neg", 3, None),
    ("lang3", "neg", 1, None),
    ("lang3", "pos", 1, None),
    ("lang4", "neg", 1, None),
    ("lang4", "pos", 1, None),
    ("heightdiff", "neg", 1, "upper"),
    ("heightdiff", "pos", 1, "upper"),
    ("heightdiff", "pos", 2, "lower"),
    ("heightdiff", "neg", 2, "lower"),
]


def _family_pairs():
    out = []
    for th, sg, n, end in FAMILY_ARGS:
        inst = family(th, sg, n, end)
        out.append((inst.b, inst.point))
    return out


HEIGHT_PAIRS = BASE_PAIRS + _family_pairs()


def _pair_id(pair):
    b, P = pair
    return f"b={b},P={P}"


@pytest.fixture(params=HEIGHT_PAIRS, ids=[_pair_id(p) for p in HEIGHT_PAIRS])
def height_pair(request):
    b, P = request.param
    assert MordellCurve(b).contains(P)
    return b, P


# one line per acceptance criterion, echoed again in the terminal summary
CRITERION_LINES: list[str] = []


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number}: {status} {self.title}"
        if self.detail:
            line += f" ({self.detail})"
        if exc_type is not None:
            line += f" [{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}]"
        print(line)
        CRITERION_LINES.append(line)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
