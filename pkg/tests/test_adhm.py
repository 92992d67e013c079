import random

import pytest

from quiverext.adhm import (
    ADHMInstance,
    as_representation,
    check_adhm,
    doubled_jordan,
    euler_char,
    ext_adhm,
    koszul_complex,
    nilpotent_model,
    random_commuting_instance,
    serre_check,
)
from quiverext.errors import NotCommuting, ShapeMismatch, UnsupportedRank
from quiverext.ext import ext_dims
from quiverext.linalg import QQ, FieldSpec
from quiverext.representation import check_relations, hom_basis

J = [[0, 1], [0, 0]]
JT = [[0, 0], [1, 0]]
Z2 = [[0, 0], [0, 0]]


def point(a, b):
    return ADHMInstance.from_lists(1, [[a]], [[b]])


def test_origin():
    o = point(0, 0)
    assert check_adhm(o)
    assert ext_adhm(o, o) == (1, 2, 1)


def test_distinct_points():
    assert ext_adhm(point(0, 0), point(1, 0)) == (0, 0, 0)
    assert ext_adhm(point(2, 3), point(2, 3)) == (1, 2, 1)


def test_jordan_block():
    inst = ADHMInstance.from_lists(2, J, Z2)
    assert ext_adhm(inst, inst) == (2, 4, 2)
    assert euler_char(inst, inst) == 0


def test_koszul_shapes_and_square():
    inst = ADHMInstance.from_lists(2, J, J)
    d0, d1 = koszul_complex(inst, inst)
    assert d0.shape == (8, 4) and d1.shape == (4, 8)
    assert (d1 @ d0).is_zero()


def test_errors():
    with pytest.raises(NotCommuting):
        ext_adhm(ADHMInstance.from_lists(2, J, JT), point(0, 0))
    two = ADHMInstance.from_lists(1, [[[0]], [[0]]], [[0]])
    assert two.r1 == 2
    with pytest.raises(UnsupportedRank):
        ext_adhm(two, two)
    with pytest.raises(ShapeMismatch):
        ADHMInstance.from_lists(2, [[0]], [[0]])


@pytest.mark.parametrize("field", [QQ, FieldSpec.prime(101)])
def test_random_serre_duality(field):
    rng = random.Random(2024)
    for _ in range(15):
        V = random_commuting_instance(rng.randint(1, 4), rng, field)
        W = random_commuting_instance(rng.randint(1, 4), rng, field)
        assert check_adhm(V) and check_adhm(W)
        assert serre_check(V, W)
        assert euler_char(V, W) == 0


def test_quiver_side():
    q, t, qe, r = doubled_jordan(2, 1)
    assert qe.num_arrows == 3
    assert len(r.generators) == 2
    inst = ADHMInstance.from_lists(2, J, J)
    rep = as_representation(inst)
    assert check_relations(rep)
    assert not check_relations(as_representation(ADHMInstance.from_lists(2, J, JT)))


def test_nilpotent_hom_agrees():
    rng = random.Random(5)
    model = nilpotent_model(3)
    for _ in range(6):
        V = random_commuting_instance(rng.randint(1, 3), rng, nilpotent=True)
        W = random_commuting_instance(rng.randint(1, 3), rng, nilpotent=True)
        h0 = ext_adhm(V, W)[0]
        rv = as_representation(V, model.relations)
        rw = as_representation(W, model.relations)
        assert hom_basis(rv, rw).dim == h0
        assert ext_dims(model, rv, rw, 0).dims == [h0]
