import pytest

import hocat.chain as ch
import hocat.model as md
from hocat.cli import generators as gen
from hocat.cli import harness
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, FILTQ, VECTQ, CategoryError, Mor, ab, vect


def zero_into(x):
    return ch.ChainMap.zero(ch.zero_complex(x.instance), x)


def test_projective_sphere_is_cofibrant_torsion_sphere_is_not():
    assert md.is_cofibration(zero_into(ch.sphere(0, ab(1))))
    assert not md.is_cofibration(zero_into(ch.sphere(0, ab(0, [2]))))


def test_fibrations_in_nonnegative_flavor_ignore_degree_zero():
    f = ch.ChainMap.zero(ch.zero_complex(FGAB), ch.sphere(0, ab(1)))
    assert md.is_fibration(f, md.CH_GEQ0)
    assert not md.is_fibration(f, md.CH_PLUS)


def test_negative_degrees_rejected_in_nonnegative_flavor():
    with pytest.raises(CategoryError):
        md.classify_map_model(zero_into(ch.sphere(-1, vect(1))), md.CH_GEQ0)


@pytest.mark.parametrize("flavor", [md.CH_GEQ0, md.CH_PLUS])
def test_cofibrant_replacement_of_z2(flavor):
    # 0 -> S^0(Z/2) factors through the resolution Z -2-> Z
    w = md.factor_cof_triv_fib(zero_into(ch.sphere(0, ab(0, [2]))), flavor)
    assert md.is_quasi_iso(w.right) and md.is_cofibration(w.left)
    assert ch.is_degreewise_projective(w.middle)
    assert [w.middle.obj(n) for n in (0, 1)] == [ab(1), ab(1)]


@pytest.mark.parametrize("flavor", [md.CH_GEQ0, md.CH_PLUS])
def test_trivial_cofibration_factorization_uses_disks(flavor):
    f = zero_into(ch.sphere(2, ab(0, [3])))
    w = md.factor_triv_cof_fib(f, flavor)
    assert w.composite() == f
    cl = md.classify_map_model(w.left, flavor)
    assert cl.is_trivial_cofibration and cl.is_weak_equivalence
    assert md.is_fibration(w.right, flavor)


def test_lifting_square_against_resolution():
    target = ch.sphere(0, ab(0, [2]))
    w = md.factor_cof_triv_fib(zero_into(target), md.CH_GEQ0)
    # lift the generating cofibration S^0(Z) -> D^1(Z) against the trivial fibration w.right
    g = ab(1)
    left = ch.ChainMap(ch.sphere(0, g), ch.disk(1, g), {0: Mor.identity(g)})
    top = ch.ChainMap(ch.sphere(0, g), w.middle, {0: Mor(g, w.middle.obj(0), IntMatrix.from_rows([[2]]))})
    bottom = ch.ChainMap.zero(ch.disk(1, g), target)
    prob = md.LiftingProblem(top, bottom, left, w.right)
    assert prob.commutes()
    lw = md.solve_lifting(prob, md.CH_GEQ0)
    assert lw.verify() and lw.diagonal[1] != Mor.zero(g, w.middle.obj(1))


def test_ill_posed_lifting_rejected():
    x = ch.sphere(0, ab(0, [2]))
    f = zero_into(x)
    prob = md.LiftingProblem(ch.ChainMap.zero(f.src, x), ch.ChainMap.identity(x), f, ch.ChainMap.identity(x))
    # 0 -> S^0(Z/2) is not a cofibration
    with pytest.raises(CategoryError):
        md.solve_lifting(prob, md.CH_GEQ0)


def test_generating_cofibrations_are_cofibrations():
    for inst in (VECTQ, FILTQ, FGAB):
        for flavor in (md.CH_GEQ0, md.CH_PLUS):
            for i in md.generating_cofibrations(inst, flavor, 2):
                assert md.is_cofibration(i)


def test_retract_argument_on_random_maps():
    for k in range(10):
        f = gen.random_map(FGAB, k)
        assert md.retract_argument_check(f, md.CH_PLUS) == md.is_cofibration(f)


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_model_suite(instance):
    rep = harness.run("model", instance, 8, 4)
    assert rep.ok, rep.failures[:3]
