from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import hocat.chain as ch
import hocat.doldkan as dk
from hocat.cli import generators as gen
from hocat.cli import harness
from hocat.excat import FGAB, FILTQ, VECTQ, ab, vect


@given(st.integers(0, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_surjection_count_is_binomial(np_):
    n, p = np_
    surj = dk.enumerate_surjections(n, p)
    assert len(surj) == comb(n, p)
    for s in surj:
        assert s(0) == 0 and s(n) == p
        assert all(s(k) <= s(k + 1) <= s(k) + 1 for k in range(n))


monotone = st.integers(0, 4).flatmap(lambda m: st.integers(0, 4).flatmap(
    lambda n: st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1).map(lambda v: tuple(sorted(v)))))


@given(monotone)
def test_epi_mono_factorization(alpha):
    eps, eta = dk.epi_mono(alpha)
    assert tuple(eps[eta[k]] for k in range(len(alpha))) == alpha
    assert set(eta) == set(range(max(eta) + 1))
    assert list(eps) == sorted(set(eps))


def test_gamma_of_sphere_sizes():
    # Γ(S^2(Z)) has C(n, 2) copies of Z in level n
    g = dk.gamma(ch.sphere(2, ab(1)), 4)
    assert [g.objects[n] for n in range(5)] == [ab(comb(n, 2)) for n in range(5)]
    assert g.is_valid()


def test_normalization_of_constant_object():
    a = dk.constant(vect(2), 3)
    n = dk.normalize(a)
    assert n.obj(0) == vect(2) and all(n.obj(k).is_zero() for k in range(1, 4))


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_n_gamma_round_trip(instance):
    for seed in range(5):
        c = gen.random_complex(instance, seed, lo=0, hi=2)
        assert dk.check_equivalence(c, 4)


def test_counit_on_gamma_output():
    a = dk.gamma(ch.disk(1, ab(0, [3])), 3)
    assert dk.check_counit(a)


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_doldkan_suite(instance):
    rep = harness.run("doldkan", instance, 15, 8)
    assert rep.ok, rep.failures[:3]
