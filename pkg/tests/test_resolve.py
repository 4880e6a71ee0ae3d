from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

import hocat.chain as ch
from hocat.cli import harness
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, FILTQ, VECTQ, Mor, ab, filt, hom_group, vect
from hocat.resolve import (
    CellBudgetExceeded,
    comparison_lift,
    ext_group,
    homology_les,
    les_is_exact,
    resolve_complex,
    resolve_object,
)


def test_frozen_ext_values():
    assert ext_group(1, ab(0, [2]), ab(1)) == ab(0, [2])
    assert ext_group(1, ab(0, [4]), ab(0, [6])) == ab(0, [2])


@given(st.integers(2, 12), st.integers(2, 12))
def test_ext1_of_cyclic_groups_is_cyclic_of_gcd(a, b):
    g = gcd(a, b)
    assert ext_group(1, ab(0, [a]), ab(0, [b])) == (ab(0, [g]) if g > 1 else ab())


def test_ext0_is_hom():
    for a, b in [(ab(1, [2]), ab(0, [4])), (ab(0, [6]), ab(2, [3]))]:
        assert ext_group(0, a, b) == hom_group(a, b)


def test_no_ext2_over_z():
    assert ext_group(2, ab(1, [2, 4]), ab(0, [2])).is_zero()


def test_vector_and_filtered_spaces_have_no_ext1():
    assert ext_group(1, vect(2), vect(3)).is_zero()
    assert ext_group(1, filt(2, [[1, 0]]), filt(1)).is_zero()


def test_resolution_of_torsion_group_has_length_one():
    r = resolve_object(ab(0, [2, 6]))
    assert r.verify()
    assert r.resolvent.lo == 0 and r.resolvent.hi == 1
    assert r.resolvent.obj(0) == ab(2) and r.resolvent.obj(1) == ab(2)


def test_cell_budget_is_enforced():
    with pytest.raises(CellBudgetExceeded):
        resolve_complex(ch.sphere(0, ab(0, [2, 4, 8])), budget=1)


def test_comparison_lift_commutes():
    a, b = ab(0, [4]), ab(0, [2])
    f = Mor(a, b, IntMatrix.from_rows([[1]]))
    p, q = resolve_object(a), resolve_object(b)
    lift = comparison_lift(f, p, q)
    assert q.map @ lift == ch.ChainMap(p.target, q.target, {0: f}) @ p.map


def test_long_exact_sequence_of_z_z_z2():
    s = lambda o: ch.sphere(0, o)
    i = ch.ChainMap(s(ab(1)), s(ab(1)), {0: Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))})
    p = ch.ChainMap(s(ab(1)), s(ab(0, [2])), {0: Mor(ab(1), ab(0, [2]), IntMatrix.from_rows([[1]]))})
    assert les_is_exact(homology_les(i, p))


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_resolve_suite(instance):
    rep = harness.run("resolve", instance, 15, 2)
    assert rep.ok, rep.failures[:3]
