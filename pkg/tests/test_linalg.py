from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverext.errors import ComplexBroken
from quiverext.linalg import (
    QQ,
    Echelon,
    FieldSpec,
    Mat,
    cohomology,
    kernel_basis,
    quotient,
    rank,
    solve,
    span,
)

GF2 = FieldSpec.prime(2)
GF7 = FieldSpec.prime(7)


def M(rows, field=QQ):
    return Mat.from_lists(field, rows)


def test_field_parse_and_format():
    assert FieldSpec.parse("rational") == QQ
    assert FieldSpec.parse("prime:101") == FieldSpec.prime(101)
    assert str(FieldSpec.prime(101)) == "prime:101"
    assert QQ.fmt(Fraction(-3, 4)) == "-3/4"
    assert GF7.fmt(-1) == "6"
    assert GF7("1/2") == 4
    with pytest.raises(ValueError):
        FieldSpec.prime(8)
    with pytest.raises(ValueError):
        FieldSpec.parse("reals")


def test_rank_examples():
    assert rank(Mat.identity(QQ, 3)) == 3
    assert rank(M([[1, 2], [2, 4]])) == 1
    assert rank(M([[1, 1], [1, 1]], GF2)) == 1
    assert rank(M([[1, 1], [1, -1]], GF2)) == 1
    assert rank(M([[1, 1], [1, -1]])) == 2


def test_kernel_examples():
    assert kernel_basis(Mat.zeros(QQ, 2, 3)).dim == 3
    k = kernel_basis(M([[1, 2], [2, 4]]))
    assert k.dim == 1
    (v,) = k.vectors()
    assert v[0] == -2 * v[1]
    assert kernel_basis(Mat.identity(QQ, 4)).dim == 0


def test_solve_examples():
    assert solve(Mat.identity(QQ, 2), [3, -1]) == [3, -1]
    m = M([[1, 2], [2, 4]])
    x = solve(m, [1, 2])
    assert m.apply(dict(enumerate(x))) == {0: 1, 1: 2}
    assert solve(m, [1, 0]) is None


def test_quotient_examples():
    full = span(QQ, 2, [{0: 1}, {1: 1}])
    reps, proj = quotient(2, full)
    assert reps.dim == 0 and proj.rows == 0
    reps, proj = quotient(2, span(QQ, 2, []))
    assert proj == Mat.identity(QQ, 2)
    reps, proj = quotient(2, span(QQ, 2, [{0: 1, 1: 1}]))
    assert reps.dim == 1
    assert proj.apply({0: 1, 1: 1}) == {}
    for v in reps.vectors():
        assert proj.apply(v) == {0: 1}


def test_cohomology_examples():
    z = Mat.zeros(QQ, 3, 3)
    assert cohomology(z, z)[0] == 3
    assert cohomology(z, Mat.identity(QQ, 3))[0] == 0
    assert cohomology(M([[1], [0]]), M([[0, 1]]))[0] == 0
    with pytest.raises(ComplexBroken):
        cohomology(M([[1], [0]]), M([[1, 0]]))


def test_matrix_arithmetic():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert (a @ b).tolist() == [[2, 1], [4, 3]]
    assert (a + b - b) == a
    assert a.T.T == a
    assert (-a).scale(-1) == a
    assert Mat.hstack([a, b]).shape == (2, 4)
    assert Mat.vstack([a, b]).shape == (4, 2)
    assert a.submatrix([1], [0, 1]).tolist() == [[3, 4]]
    assert M([["1/2", "-3/4"]]).to_strings() == [["1/2", "-3/4"]]


def test_echelon_incremental():
    e = Echelon(QQ, 3)
    assert e.add({0: 2, 1: 4})
    assert not e.add({0: 1, 1: 2})
    assert e.add({1: 1, 2: 1})
    assert e.rank == 2
    assert e.contains({0: 1, 1: 3, 2: 1})
    assert e.residual({2: 5}) != {}
    assert len(e.kernel_vectors()) == 1


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from([QQ, GF7, GF2]))
def test_rank_nullity(rows, field):
    m = M(rows, field)
    k = kernel_basis(m)
    assert rank(m) + k.dim == m.cols
    for v in k.vectors():
        assert m.apply(v) == {}


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_quotient_property(rows):
    m = M(rows)
    sub = span(QQ, m.cols, m._data)
    reps, proj = quotient(m.cols, sub)
    assert reps.dim + sub.dim == m.cols
    for v in sub.vectors():
        assert proj.apply(v) == {}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 1000))
def test_cohomology_base_change(n, seed):
    import random

    rng = random.Random(seed)
    # a complex k^1 -> k^n -> k^1 with random middle base change
    a = Mat.from_lists(QQ, [[rng.randint(-2, 2)] for _ in range(n)], 1)
    b = Mat.from_lists(QQ, [[rng.randint(-2, 2) for _ in range(n)]], n)
    if not (b @ a).is_zero():
        b = Mat.zeros(QQ, 1, n)
    while True:
        g = Mat.from_lists(QQ, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        if rank(g) == n:
            break
    ginv = Mat.from_lists(QQ, [solve(g, [int(i == j) for i in range(n)]) for j in range(n)], n).T
    assert cohomology(a, b)[0] == cohomology(g @ a, b @ ginv)[0]
