from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hocat.exactlin import (
    IntMatrix,
    RatMatrix,
    determinant,
    int_kernel_basis,
    inverse,
    nullspace_basis,
    rank,
    rref,
    smith_normal_form,
    solve_int_linear,
    solve_linear,
)


def int_matrices(max_rows=4, max_cols=4, bound=9):
    return st.integers(0, max_rows).flatmap(lambda r: st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(lambda rows: IntMatrix(r, c, rows))))


def rat_matrices(max_rows=4, max_cols=4):
    frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.integers(0, max_rows).flatmap(lambda r: st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.lists(frac, min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: RatMatrix(r, c, rows))))


def to_sympy(m):
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator)
                                         for row in m.data for x in map(Fraction, row)])


def test_integral_rationals_are_stored_as_int():
    m = RatMatrix(1, 2, [[Fraction(4, 2), Fraction(1, 3)]])
    assert type(m.data[0][0]) is int and m.data[0][1] == Fraction(1, 3)


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        RatMatrix(2, 2, [[1, 2]])


def test_known_smith_form():
    a = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert smith_normal_form(a).diagonal == [2, 6, 12]


@given(rat_matrices())
def test_rank_and_determinant_match_sympy(m):
    assert rank(m) == to_sympy(m).rank()
    if m.rows == m.cols:
        assert Fraction(determinant(m)) == Fraction(str(to_sympy(m).det()))


@given(rat_matrices())
def test_rref_is_idempotent_and_matches_sympy(m):
    r, pivots = rref(m)
    assert rref(r) == (r, pivots)
    want, want_pivots = to_sympy(m).rref()
    assert to_sympy(r) == want and tuple(pivots) == tuple(want_pivots)


@given(rat_matrices())
def test_nullspace_is_annihilated_and_complete(m):
    k = nullspace_basis(m)
    assert (m @ k).is_zero()
    assert k.cols == m.cols - rank(m) and rank(k) == k.cols


@given(int_matrices())
def test_smith_certificate(a):
    snf = smith_normal_form(a, track_inverse=True)
    assert snf.U @ a @ snf.V == snf.D
    assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.V)) == 1
    assert snf.U_inv @ snf.U == IntMatrix.identity(a.rows)
    diag = snf.diagonal
    for i in range(a.rows):
        for j in range(a.cols):
            if i != j:
                assert snf.D.data[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz) and all(b % a_ == 0 for a_, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz


@given(int_matrices())
def test_smith_invariants_match_sympy(a):
    if a.rows == 0 or a.cols == 0:
        return
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    want = sympy_snf(sympy.Matrix(a.rows, a.cols, [x for r in a.data for x in r]), domain=sympy.ZZ)
    want_diag = sorted(abs(int(want[i, i])) for i in range(min(a.rows, a.cols)))
    assert sorted(smith_normal_form(a).diagonal) == want_diag


@given(int_matrices())
def test_integer_kernel_is_a_lattice_basis(a):
    k = int_kernel_basis(a)
    assert (a @ k).is_zero()
    assert k.cols == a.cols - rank(a)
    if k.cols:
        # a saturated lattice basis has gcd-one maximal minors
        assert smith_normal_form(k).diagonal == [1] * k.cols


@given(rat_matrices(), st.data())
def test_solve_linear_iff_rank(a, data):
    b = RatMatrix(a.rows, 1, [[data.draw(st.integers(-3, 3))] for _ in range(a.rows)])
    x = solve_linear(a, b)
    consistent = rank(a.hstack(b)) == rank(a)
    assert (x is not None) == consistent
    if x is not None:
        assert a @ x == b


@given(int_matrices(max_rows=3, max_cols=3), st.data())
def test_solve_int_linear_modulo(a, data):
    moduli = [data.draw(st.sampled_from([0, 2, 3, 4])) for _ in range(a.rows)]
    x0 = IntMatrix(a.cols, 1, [[data.draw(st.integers(-3, 3))] for _ in range(a.cols)])
    b = a @ x0
    x = solve_int_linear(a, b, moduli)
    assert x is not None
    r = a @ x - b
    for i, q in enumerate(moduli):
        v = r.data[i][0]
        assert (v % q == 0) if q else v == 0


def test_unsolvable_integer_system():
    a = IntMatrix.from_rows([[2]])
    assert solve_int_linear(a, IntMatrix.from_rows([[1]]), [0]) is None
    assert solve_int_linear(a, IntMatrix.from_rows([[1]]), [3]) is not None


def test_inverse_of_singular_is_none():
    assert inverse(RatMatrix.from_rows([[1, 2], [2, 4]])) is None
