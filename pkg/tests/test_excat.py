import pytest

from hocat.cli import harness
from hocat.exactlin import IntMatrix, RatMatrix
from hocat.excat import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    Mor,
    ab,
    classify,
    cokernel,
    epi_mono_factorization,
    filt,
    hom_group,
    is_iso,
    is_projective,
    is_projective_by_splitting,
    is_short_exact,
    kernel,
    present_orders,
    projective_cover,
    vect,
)


def int_mor(src, dst, rows):
    return Mor(src, dst, IntMatrix.from_rows(rows, src.size))


def test_filtered_identity_that_raises_the_filtration_is_not_strict():
    # id: (Q, 0) -> (Q, Q) is mono and epi but not an isomorphism
    f = Mor(filt(1), filt(1, [[1]]), RatMatrix.identity(1))
    c = classify(f)
    assert c.is_mono and c.is_epi
    assert not c.is_admissible and not c.is_admissible_mono and not c.is_admissible_epi
    assert not is_iso(f) and not c.coimage_image_iso


def test_filtered_morphism_must_preserve_subspace():
    with pytest.raises(CategoryError):
        Mor(filt(1, [[1]]), filt(1), RatMatrix.identity(1))


def test_multiplication_by_two_on_z():
    f = int_mor(ab(1), ab(1), [[2]])
    c = classify(f)
    assert c.is_admissible_mono and not c.is_epi
    assert cokernel(f).obj == ab(0, [2])


def test_kernel_of_doubling_on_z4():
    f = int_mor(ab(0, [4]), ab(0, [4]), [[2]])
    assert kernel(f).obj == ab(0, [2])
    assert cokernel(f).obj == ab(0, [2])


def test_torsion_validation():
    with pytest.raises(CategoryError):
        ab(0, [4, 2])
    with pytest.raises(CategoryError):
        ab(0, [1])
    with pytest.raises(CategoryError):
        int_mor(ab(0, [2]), ab(1), [[1]])


def test_chinese_remainder_normal_form():
    assert present_orders([3, 4]).obj == ab(0, [12])
    assert present_orders([2, 4]).obj == ab(0, [2, 4])
    assert present_orders([0, 6, 1]).obj == ab(1, [6])


def test_hom_groups():
    assert hom_group(ab(0, [4]), ab(0, [6])) == ab(0, [2])
    assert hom_group(ab(0, [2]), ab(1)).is_zero()
    assert hom_group(ab(2), ab(0, [3])) == ab(0, [3, 3])
    assert hom_group(vect(2), vect(3)) == vect(6)


def test_projectivity_two_ways():
    for x in (ab(2), ab(1, [2]), ab(0, [3]), vect(2), filt(2, [[1, 0]])):
        assert is_projective(x) == is_projective_by_splitting(x)
    assert not is_projective(ab(0, [5]))


def test_projective_cover_is_admissible_epi():
    x = ab(1, [2, 6])
    p, u = projective_cover(x)
    assert is_projective(p) and classify(u).is_admissible_epi


def test_short_exact_sequence_z_z_z2():
    i = int_mor(ab(1), ab(1), [[2]])
    p = int_mor(ab(1), ab(0, [2]), [[1]])
    assert is_short_exact(i, p)
    assert not is_short_exact(i, int_mor(ab(1), ab(0, [4]), [[1]]))


def test_epi_mono_factorization_reconstructs():
    f = int_mor(ab(2), ab(1, [4]), [[1, 2], [2, 0]])
    e, m = epi_mono_factorization(f)
    assert m @ e == f


@pytest.mark.parametrize("instance", [VECTQ, FILTQ, FGAB])
def test_excat_suite(instance):
    rep = harness.run("excat", instance, 40, 11)
    assert rep.ok, rep.failures[:3]
