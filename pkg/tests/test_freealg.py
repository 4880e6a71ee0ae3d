from math import comb

import pytest

import hocat.freealg as fa
from hocat.cli import harness
from hocat.exactlin import RatMatrix


@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_symmetric_algebra_dimensions_and_section(q):
    s = fa.symmetric_trunc(q, 5)
    assert s.dims == [1] + [comb(q + n - 1, n) for n in range(1, 6)]
    assert fa.section_is_right_inverse(s)


# Witt's formula, frozen: free Lie algebra on two generators
def test_free_lie_dimensions_two_generators():
    assert fa.free_lie_trunc(2, 6).dims == [0, 2, 1, 2, 3, 6, 9]


@pytest.mark.parametrize("q", [1, 2, 3])
def test_lie_dimensions_agree_with_brute_force(q):
    lie = fa.free_lie_trunc(q, 5)
    assert lie.dims == fa.lie_dims_by_brute_force(q, 5)
    assert fa.lie_section_identity(lie)


@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_pbw(q):
    assert fa.pbw_dimension_check(q, 5)


def test_tensor_algebra_is_associative():
    assert fa.tensor_algebra_trunc(2, 4).dims == [1, 2, 4, 8, 16]
    assert fa.associativity_holds(2, 4)


def test_symmetric_projection_is_natural():
    a = RatMatrix.from_rows([[1, 2], [0, -1]])
    assert fa.symmetric_naturality(a, 3)


def test_degree_bound():
    with pytest.raises(ValueError):
        fa.symmetric_trunc(3, 50)


def test_freealg_suite():
    rep = harness.run("freealg", None, 10, 9)
    assert rep.ok, rep.failures[:3]
