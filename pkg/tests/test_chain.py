import pytest

import hocat.chain as ch
from hocat.cli import generators as gen
from hocat.cli import harness
from hocat.exactlin import IntMatrix, RatMatrix
from hocat.excat import FGAB, FILTQ, VECTQ, Mor, ab, direct_sum, vect
from hocat.excat.objects import CategoryError


def z_to_z_to_z2():
    # 0 -> Z -2-> Z -> Z/2 -> 0, exact but not split
    d2 = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
    d1 = Mor(ab(1), ab(0, [2]), IntMatrix.from_rows([[1]]))
    return ch.Complex(FGAB, {2: ab(1), 1: ab(1), 0: ab(0, [2])}, {2: d2, 1: d1})


def test_acyclic_but_not_split_over_z():
    x = z_to_z_to_z2()
    assert ch.is_acyclic(x) and ch.acyclic_by_generators(x) and ch.homology_vanishes(x)
    assert not ch.is_split_exact(x)
    assert ch.homotopy_class_group(x, x, 0) == ab(0, [2])


def test_same_sequence_over_q_splits():
    d2 = Mor(vect(1), vect(1), RatMatrix.from_rows([[2]]))
    x = ch.Complex(VECTQ, {2: vect(1), 1: vect(1)}, {2: d2})
    assert ch.is_split_exact(x)


def test_square_zero_is_enforced():
    one = Mor(vect(1), vect(1), RatMatrix.identity(1))
    with pytest.raises(CategoryError, match="d_1"):
        ch.Complex(VECTQ, {0: vect(1), 1: vect(1), 2: vect(1)}, {1: one, 2: one})


def test_homology_of_sphere_and_disk():
    e = ab(1, [3])
    assert ch.homology(ch.sphere(2, e), 2).obj == e
    d = ch.disk(2, e)
    assert all(ch.homology(d, n).obj.is_zero() for n in range(0, 4))


def test_shift_sign_and_degrees():
    x = ch.disk(1, vect(1))
    y = ch.shift(x, 1)
    assert (y.lo, y.hi) == (-1, 0)
    assert y.d(0).matrix == RatMatrix.from_rows([[-1]])


def test_cone_of_identity_is_contractible():
    x = ch.disk(1, ab(2))
    c = ch.cone(ch.ChainMap.identity(x))
    assert ch.is_split_exact(c.complex)
    assert (c.pi @ c.tau).is_zero()


def test_cone_differential_convention():
    # f = 3: S^0(Q) -> S^0(Q); cone is Q (deg 1) -> Q (deg 0) with d = -f
    s = ch.sphere(0, vect(1))
    f = ch.ChainMap(s, s, {0: Mor(vect(1), vect(1), RatMatrix.from_rows([[3]]))})
    c = ch.cone(f).complex
    assert c.d(1).matrix == RatMatrix.from_rows([[-3]])
    assert ch.is_quasi_iso(f)


def test_hom_complex_of_disk():
    # Hom(D, D) of a contractible complex is contractible
    x = ch.disk(1, vect(1))
    hc = ch.hom_complex(x, x)
    for n in hc.complex.degrees():
        assert (hc.complex.d(n - 1) @ hc.complex.d(n)).is_zero()
    assert ch.is_acyclic(hc.complex)


def test_null_homotopy_witness_verifies():
    x = ch.disk(1, ab(1))
    w = ch.null_homotopy_witness(ch.ChainMap.identity(x))
    assert w is not None and w.verify()


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_chain_suite(instance):
    rep = harness.run("chain", instance, 30, 5)
    assert rep.ok, rep.failures[:3]


def test_chain_suite_vectq_hundred_cases():
    assert harness.run("chain", VECTQ, 100, 7).ok


def test_random_complex_determinism_and_zero_budget():
    for inst in (VECTQ, FILTQ, FGAB):
        assert gen.random_complex(inst, 42) == gen.random_complex(inst, 42)
        assert gen.random_complex(inst, 42, budget=0).is_zero()


def _cone_dropping_f(f):
    # mutant: the -f term is omitted, so the cone is X[-1] + Y
    x, y = f.src, f.dst
    zero = ch.ChainMap.zero(x, y)
    return _original_cone(zero)


_original_cone = ch.cone


def _cone_with_flipped_sign(f):
    # mutant: +d^X instead of -d^X; d^2 = 0 fails whenever f d^X != 0
    x, y = f.src, f.dst
    rng = ch._range_union(ch.shift(x, -1), y)
    sums = {n: direct_sum(x.obj(n - 1), y.obj(n)) for n in range(rng.start - 1, rng.stop)}
    diffs = {}
    for n in rng:
        ix, iy = sums[n - 1].injections
        px, py = sums[n].projections
        diffs[n] = (ix @ x.d(n - 1) @ px) + (iy @ (-f[n - 1]) @ px) + (iy @ y.d(n) @ py)
    c = ch.Complex(f.instance, {n: s.obj for n, s in sums.items()}, diffs)
    tau = ch.ChainMap(y, c, {n: sums[n].injections[1] for n in rng}, check=False)
    pi = ch.ChainMap(c, ch.shift(x, -1), {n: sums[n].projections[0] for n in rng}, check=False)
    return ch.Cone(c, tau, pi)


@pytest.mark.parametrize("mutant", [_cone_dropping_f, _cone_with_flipped_sign])
def test_chain_suite_catches_broken_cone(monkeypatch, mutant):
    monkeypatch.setattr(ch, "cone", mutant)
    rep = harness.run("chain", VECTQ, 30, 3)
    assert not rep.ok


def test_thousand_random_complexes_satisfy_invariants():
    insts = (VECTQ, FILTQ, FGAB)
    for k in range(1000):
        x = gen.random_complex(insts[k % 3], k, budget=3)
        # rebuilding with validation re-checks d^2 = 0 and all endpoints
        assert ch.Complex(x.instance, x.objects, x.diffs) == x
