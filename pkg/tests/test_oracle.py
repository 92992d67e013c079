import random

import pytest

from conftest import commuting, jordan, kronecker, rels, word
from quiverext.algebra import Quiver, build_algebra
from quiverext.linalg import QQ, FieldSpec, rank
from quiverext.oracle import ext_dims_oracle, projective_cover, resolve
from quiverext.representation import Representation, check_relations, random_module, random_representation


def simple(model, v):
    return Representation.simple(model.quiver, model.field, v, model.relations)


def test_cover_of_simple(jordan_sq):
    st = projective_cover(jordan_sq, simple(jordan_sq, "o"))
    assert st.multiplicities == (1,)
    assert st.cover.dims == (2,)
    assert st.kernel.dims == (1,)


def test_cover_of_projective_is_itself(comm):
    L = random_module(comm, 2, 0, seed=0)
    st = projective_cover(comm, L)
    assert st.multiplicities == (2,)
    assert st.kernel.total_dim == 0


def test_kronecker_resolution(kron):
    steps = resolve(kron, simple(kron, "1"), 2)
    assert steps[0].multiplicities == (1, 0)
    assert steps[1].multiplicities == (0, 2)
    assert steps[2].multiplicities == (0, 0)


@pytest.mark.parametrize("make", [lambda: jordan(3), commuting, kronecker])
def test_steps_are_exact(make):
    m = make()
    M = random_module(m, 2, 2, seed=5)
    for st in resolve(m, M, 3):
        assert check_relations(st.cover)
        for j, s in enumerate(st.surjection):
            # onto, and the kernel has the complementary dimension
            assert rank(s) == s.rows
            assert st.kernel.dims[j] == s.cols - s.rows
            assert (s @ st.inclusion[j]).is_zero()
        tails, heads = m.quiver.tails(), m.quiver.heads()
        for a in range(m.quiver.num_arrows):
            t, h = tails[a], heads[a]
            assert st.inclusion[h] @ st.kernel.maps[a] == st.cover.maps[a] @ st.inclusion[t]


@pytest.mark.parametrize("make", [lambda: jordan(3), commuting])
def test_minimality(make):
    # the kernel sits inside the radical of the cover
    m = make()
    M = random_module(m, 2, 1, seed=2)
    for st in resolve(m, M, 2):
        top = sum(st.multiplicities)
        assert top == simple_hom_dim(m, st.cover)


def simple_hom_dim(m, M):
    from quiverext.representation import hom_basis

    return sum(hom_basis(M, simple(m, v)).dim for v in m.quiver.vertices)


@pytest.mark.parametrize(
    "quiver",
    [
        Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")]),
        Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]),
    ],
)
def test_ext1_between_simples_counts_arrows(quiver):
    m = build_algebra(quiver, field=FieldSpec.prime(101))
    for i in quiver.vertices:
        for j in quiver.vertices:
            arrows = sum(1 for a in quiver.arrows if a.tail == i and a.head == j)
            got = ext_dims_oracle(m, simple(m, i), simple(m, j), 1)
            assert got == [int(i == j), arrows]


def test_hereditary_vanishing():
    q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    m = build_algebra(q)
    rng = random.Random(1)
    V = random_representation(q, QQ, [1, 2, 1], rng)
    W = random_representation(q, QQ, [2, 1, 1], rng)
    assert ext_dims_oracle(m, V, W, 3)[2:] == [0, 0]


def test_zero_relation_gives_ext2():
    q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    m = build_algebra(q, r=rels(word("b", "a")))
    assert ext_dims_oracle(m, simple(m, "1"), simple(m, "3"), 3) == [0, 0, 1, 0]
