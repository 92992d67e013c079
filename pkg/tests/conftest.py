import pytest

from quiverext.algebra import Quiver, RelationSet, build_algebra
from quiverext.linalg import QQ

ACCEPTANCE_LINES = []


def rels(*rows):
    return RelationSet.parse(rows)


def word(*w):
    return [(1, tuple(w))]


def jordan(power=2, field=QQ):
    q = Quiver.build(["o"], [("x", "o", "o")])
    return build_algebra(q, r=rels(word(*["x"] * power)), field=field)


def commuting(field=QQ):
    q = Quiver.build(["o"], [("x", "o", "o"), ("y", "o", "o")])
    r = rels([(1, ("x", "y")), (-1, ("y", "x"))], word("x", "x"), word("y", "y"))
    return build_algebra(q, r=r, field=field)


def kronecker(field=QQ):
    q = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    return build_algebra(q, field=field)


def point(field=QQ):
    return build_algebra(Quiver.build(["o"]), field=field)


@pytest.fixture
def jordan_sq():
    return jordan(2)


@pytest.fixture
def comm():
    return commuting()


@pytest.fixture
def kron():
    return kronecker()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
