import pytest

import hocat.chain as ch
import hocat.model as md
from hocat.cli import generators as gen
from hocat.cli import harness
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, VECTQ, Mor, ab, vect
from hocat.monoidal import (
    is_flat_probe,
    pushout_product,
    tensor_chain_maps,
    tensor_complexes,
    tensor_objects,
    unit_object,
)


def test_tensor_of_abelian_groups():
    assert tensor_objects(ab(0, [4]), ab(0, [6])) == ab(0, [2])
    assert tensor_objects(ab(2), ab(1, [3])) == ab(2, [3, 3])
    assert tensor_objects(ab(0, [2]), ab(0, [3])).is_zero()
    assert tensor_objects(vect(2), vect(3)) == vect(6)


def test_unit_is_neutral():
    for x in (ab(1, [2]), vect(3)):
        assert tensor_objects(unit_object(x.instance), x) == x


def test_flatness_probe():
    assert is_flat_probe(ab(2))
    assert not is_flat_probe(ab(0, [2]))


def test_tensor_differential_sign():
    # D^1 ⊗ D^1 has d(a ⊗ b) = da ⊗ b + (-1)^|a| a ⊗ db
    d = ch.disk(1, vect(1))
    t = tensor_complexes(d, d).product
    assert [t.obj(n).size for n in range(3)] == [1, 2, 1]
    assert ch.is_split_exact(t)


def test_koszul_sign_on_torsion():
    # Z -2-> Z tensored with itself has homology Z/2 in degrees 0 and 1
    two = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
    x = ch.Complex(FGAB, {0: ab(1), 1: ab(1)}, {1: two})
    t = tensor_complexes(x, x).product
    assert ch.homology(t, 0).obj == ab(0, [2])
    assert ch.homology(t, 1).obj == ab(0, [2])
    assert ch.homology(t, 2).obj.is_zero()


def test_tensor_of_chain_maps_respects_composition():
    x = gen.random_complex(VECTQ, 3)
    f = gen.random_chain_map(x, x, 4)
    g = gen.random_chain_map(x, x, 5)
    assert tensor_chain_maps(f @ g, ch.ChainMap.identity(x)) == (
        tensor_chain_maps(f, ch.ChainMap.identity(x)) @ tensor_chain_maps(g, ch.ChainMap.identity(x)))


@pytest.mark.parametrize("instance", [VECTQ, FGAB])
def test_pushout_product_of_sphere_inclusions(instance):
    gens = md.generating_cofibrations(instance, md.CH_GEQ0, 1)
    for i in gens:
        for j in gens:
            assert md.is_cofibration(pushout_product(i, j))


@pytest.mark.parametrize("instance", [VECTQ, FGAB])
def test_monoidal_suite(instance):
    rep = harness.run("monoidal", instance, 15, 6)
    assert rep.ok, rep.failures[:3]
