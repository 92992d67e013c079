import itertools

import pytest

from conftest import commuting, jordan, rels, word
from quiverext.algebra import (
    Quiver,
    Twist,
    associated_graded,
    build_algebra,
    enumerate_paths,
    expand_twist,
    ideal_graded_piece,
)
from quiverext.errors import (
    CutoffExceeded,
    InhomogeneousRelation,
    InputError,
    MissingTwistEntry,
    NonParallelRelation,
    NotAdmissible,
)
from quiverext.linalg import QQ, FieldSpec, Mat


def doubled_jordan():
    return Quiver.build(["o"], [("x", "o", "o"), ("y", "o", "o")])


def test_quiver_validation():
    with pytest.raises(InputError):
        Quiver.build([], [])
    with pytest.raises(InputError):
        Quiver.build(["1"], [("a", "1", "2")])
    with pytest.raises(InputError):
        Quiver.build(["1"], [("a", "1", "1"), ("a", "1", "1")])


def test_expand_twist():
    kron = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    assert expand_twist(kron, Twist.trivial(kron)) == kron
    q = expand_twist(doubled_jordan(), Twist.from_ranks({"x": 2, "y": 3}))
    assert q.num_vertices == 1 and q.num_arrows == 5
    q = expand_twist(kron, Twist.from_ranks({"a": 2, "b": 1}))
    assert q.num_vertices == 2 and q.num_arrows == 3
    assert all(a.tail == "1" and a.head == "2" for a in q.arrows)
    with pytest.raises(MissingTwistEntry):
        expand_twist(kron, Twist.from_ranks({"a": 1}))


def test_enumerate_paths():
    kron = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    trivial = enumerate_paths(kron, 0)
    assert {(p.tail, p.head) for p in trivial} == {("1", "1"), ("2", "2")}
    loop = Quiver.build(["o"], [("x", "o", "o")])
    assert [p.word for p in enumerate_paths(loop, 3)] == [("x", "x", "x")]
    assert enumerate_paths(kron, 2) == []
    a3 = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    (p,) = enumerate_paths(a3, 2)
    assert p.word == ("b", "a") and p.tail == "1" and p.head == "3"
    assert enumerate_paths(a3, 1, src="2") == [q for q in enumerate_paths(a3, 1) if q.tail == "2"]


def test_relation_validation():
    q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])
    with pytest.raises(InhomogeneousRelation):
        build_algebra(q, r=rels([(1, ("b", "a")), (1, ("c",))]))
    with pytest.raises(InhomogeneousRelation):
        build_algebra(q, r=rels(word("c")))
    loops = Quiver.build(["1", "2"], [("x", "1", "1"), ("y", "2", "2")])
    with pytest.raises(NonParallelRelation):
        build_algebra(loops, r=rels([(1, ("x", "x")), (1, ("y", "y"))]))
    with pytest.raises(InputError):
        build_algebra(q, r=rels(word("a", "b")))


def test_ideal_pieces():
    m = jordan(2)
    assert ideal_graded_piece(m, 1, 2).rows == 1
    assert ideal_graded_piece(m, 2, 4).rows == 1
    assert ideal_graded_piece(m, 2, 3).rows == 0
    q = doubled_jordan()
    m = build_algebra(q, r=rels([(1, ("x", "y")), (-1, ("y", "x"))], word("x", "x"), word("y", "y")))
    assert m.ideal_piece(1, 2).rank == 3


def test_commutator_piece_is_commutator():
    # the commutator alone: degree-2 piece is spanned by xy - yx
    from quiverext.algebra import AlgebraModel

    q = doubled_jordan()
    r = rels([(1, ("x", "y")), (-1, ("y", "x"))])
    model = AlgebraModel(q, Twist.trivial(q), r, QQ, 6)
    piece = ideal_graded_piece(model, 1, 2)
    assert piece.rows == 1
    (row,) = piece.tolist()
    names = ["".join(q.arrows[a].name for a in w) for w, _, _ in model.paths(2)]
    vec = dict(zip(names, row))
    assert vec["xy"] == -vec["yx"] != 0
    assert vec["xx"] == vec["yy"] == 0


def test_build_algebra_examples():
    m = jordan(2)
    assert (m.dim, m.N) == (2, 2)
    m = commuting()
    assert (m.dim, m.N) == (4, 3)
    assert m.dims_by_degree == [1, 2, 1]
    with pytest.raises(NotAdmissible):
        build_algebra(doubled_jordan(), r=rels([(1, ("x", "y")), (-1, ("y", "x"))]), max_degree=6)


def test_associated_graded_examples():
    m = jordan(2)
    a0 = associated_graded(m, 0)
    assert a0.dims_by_degree()[: m.N] == m.dims_by_degree
    a1 = associated_graded(m, 1)
    assert (a1.dim, a1.cutoff) == (2, 4)
    assert a1.degrees == [2, 3]
    a2 = associated_graded(m, 2)
    assert (a2.dim, a2.cutoff) == (2, 7)
    assert a2.degrees == [4, 5]


def test_cutoff_budget():
    m = commuting()
    m.path_budget = 10
    with pytest.raises(CutoffExceeded):
        m.slice(2)


ALGEBRAS = [
    lambda: jordan(3),
    lambda: commuting(),
    lambda: build_algebra(
        Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")]),
        r=rels(word("a", "b", "a"), word("b", "a", "b")),
    ),
    lambda: build_algebra(
        Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")]),
        r=rels([(1, ("b", "a")), (-1, ("d", "c"))], word("b", "c"), word("d", "a")),
        field=FieldSpec.prime(7),
    ),
]


@pytest.mark.parametrize("make", ALGEBRAS)
def test_degreewise_dimensions(make):
    m = make()
    for d in range(m.N):
        assert m.num_paths(d) == m.ideal_piece(1, d).rank + m.dims_by_degree[d]
    assert m.ideal_piece(1, m.N).rank == m.num_paths(m.N)


@pytest.mark.parametrize("make", ALGEBRAS)
def test_cutoff_soundness(make):
    m = make()
    for p in range(3):
        D = m.cutoff(p)
        for d in range(D + 1, D + m.m + 1):
            assert m.ideal_piece(p, d).rank == m.ideal_piece(p + 1, d).rank


@pytest.mark.parametrize("make", ALGEBRAS)
def test_bimodule_axioms(make):
    m = make()
    for p in range(3):
        sl = m.slice(p)
        na = m.quiver.num_arrows
        for a, b in itertools.product(range(na), repeat=2):
            assert sl.left[a] @ sl.right[b] == sl.right[b] @ sl.left[a]
        for a in range(na):
            for j in range(m.quiver.num_vertices):
                if j != m.tails[a]:
                    assert (sl.left[a] @ sl.left_projector(j)).is_zero()
                if j != m.heads[a]:
                    assert (sl.right[a] @ sl.right_projector(j)).is_zero()
        total = sum((sl.left_projector(j) for j in range(m.quiver.num_vertices)), Mat.zeros(m.field, sl.dim, sl.dim))
        assert total == Mat.identity(m.field, sl.dim)
        # lift then project is the identity
        for i, v in enumerate(sl.lifts):
            assert sl.project(v, sl.degrees[i]) == {i: m.field.one()}


@pytest.mark.parametrize("make", ALGEBRAS)
def test_associativity(make):
    m = make()
    one = m.field.one()
    units = [{i: one} for i in range(m.dim)]
    for a, b, c in itertools.product(units, repeat=3):
        assert m.multiply(m.multiply(a, b), c) == m.multiply(a, m.multiply(b, c))
