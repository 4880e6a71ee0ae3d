"""Degree-truncated tensor, symmetric and free Lie algebras on ``V = Q^q``.

The degree-``n`` tensor power ``T_n = Q^{q^n}`` has the words of length
``n`` over ``{0..q-1}`` as basis, ordered lexicographically (a word is its
base-``q`` index).  Products are word concatenation.

``S_n`` is the genuine coinvariant quotient of ``T_n`` by the symmetric
group: its basis is the set of ``Σ_n``-orbits of words and ``π`` sends a
word to its orbit.  The section ``ρ_S`` applies the averaging operator
``(1/n!) Σ_σ σ`` to a representative.

``L_n`` is built inside ``T_n`` as the span of brackets ``[v, ℓ]`` with
``v ∈ V`` and ``ℓ ∈ L_{n-1}``.  The right-nested bracket map
``θ(v_1 ⊗ … ⊗ v_n) = [v_1, [v_2, … v_n]]`` acts on ``L_n`` as ``n · id``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial
from typing import Optional

from .exactlin import RatMatrix, column_space_basis, rank

MAX_DEGREE = 6


def _check(q: int, d: int, bound: Optional[int] = MAX_DEGREE):
    if q < 0 or d < 0:
        raise ValueError("dimension and degree must be nonnegative")
    if bound is not None and d > bound:
        raise ValueError(f"degree {d} exceeds the configured bound {bound}")


def words(q: int, n: int) -> list:
    return list(product(range(q), repeat=n))


def word_index(w, q: int) -> int:
    k = 0
    for a in w:
        k = k * q + a
    return k


@dataclass
class GradedTruncation:
    base_dim: int
    max_degree: int
    dims: list
    embeddings: dict = field(default_factory=dict)   # n -> matrix into T_n
    projections: dict = field(default_factory=dict)  # n -> matrix T_n -> piece
    sections: dict = field(default_factory=dict)     # n -> matrix piece -> T_n


# ---------------------------------------------------------------------------
# Tensor algebra
# ---------------------------------------------------------------------------

def tensor_algebra_trunc(q: int, d: int) -> GradedTruncation:
    _check(q, d, bound=None)
    dims = [q ** n for n in range(d + 1)]
    return GradedTruncation(q, d, dims)


def multiply(q: int, u: int, v: int, n: int) -> int:
    """Index of the concatenation of word ``u`` with the length-``n`` word ``v``."""
    return u * q ** n + v


def associativity_holds(q: int, d: int) -> bool:
    for a in range(d + 1):
        for b in range(d + 1 - a):
            for c in range(d + 1 - a - b):
                for x in range(q ** a):
                    for y in range(q ** b):
                        for z in range(q ** c):
                            left = multiply(q, multiply(q, x, y, b), z, c)
                            right = multiply(q, x, multiply(q, y, z, c), b + c)
                            if left != right:
                                return False
    return True


def tensor_power_map(a: RatMatrix, n: int) -> RatMatrix:
    """``T_n(A) = A^{⊗n}`` for a linear map ``A: Q^q -> Q^r``."""
    out = RatMatrix.identity(1)
    for _ in range(n):
        out = out.kron(a)
    return out


# ---------------------------------------------------------------------------
# Symmetric algebra as coinvariants
# ---------------------------------------------------------------------------

def _orbits(q: int, n: int):
    reps = sorted({tuple(sorted(w)) for w in words(q, n)})
    pos = {r: k for k, r in enumerate(reps)}
    return reps, pos


def coinvariant_projection(q: int, n: int) -> RatMatrix:
    """``π: T_n -> S_n``, a word goes to its orbit."""
    reps, pos = _orbits(q, n)
    rows = [[0] * (q ** n) for _ in reps]
    for k, w in enumerate(words(q, n)):
        rows[pos[tuple(sorted(w))]][k] = 1
    return RatMatrix(len(reps), q ** n, rows)


def symmetrizer_column(w: tuple, q: int) -> list:
    """``(1/n!) Σ_σ σ · w`` as a vector in ``T_n``."""
    n = len(w)
    col = [Fraction(0)] * (q ** n)
    weight = Fraction(1, factorial(n))
    for perm in permutations(range(n)):
        col[word_index(tuple(w[perm[k]] for k in range(n)), q)] += weight
    return col


def symmetric_section(q: int, n: int) -> RatMatrix:
    reps, _ = _orbits(q, n)
    return RatMatrix.from_columns([symmetrizer_column(r, q) for r in reps], q ** n)


def transposition_relations_vanish(q: int, n: int, pi: RatMatrix) -> bool:
    """``π ∘ (1 - τ) = 0`` for every adjacent transposition ``τ``."""
    for k in range(n - 1):
        for w in words(q, n):
            t = list(w)
            t[k], t[k + 1] = t[k + 1], t[k]
            a, b = word_index(w, q), word_index(tuple(t), q)
            if any(pi.data[r][a] != pi.data[r][b] for r in range(pi.rows)):
                return False
    return True


def symmetric_trunc(q: int, d: int, bound: Optional[int] = MAX_DEGREE) -> GradedTruncation:
    _check(q, d, bound)
    g = GradedTruncation(q, d, [])
    for n in range(d + 1):
        pi = coinvariant_projection(q, n)
        g.dims.append(pi.rows)
        g.projections[n] = pi
        g.sections[n] = symmetric_section(q, n)
    return g


def section_is_right_inverse(g: GradedTruncation) -> bool:
    """``π ∘ ρ_S = id`` in every degree."""
    for n in range(g.max_degree + 1):
        pi, rho = g.projections[n], g.sections[n]
        if pi @ rho != RatMatrix.identity(pi.rows):
            return False
    return True


def symmetric_dim(q: int, n: int) -> int:
    return 1 if n == 0 else comb(q + n - 1, n)


def symmetric_naturality(a: RatMatrix, n: int) -> bool:
    """``π_W ∘ A^{⊗n} = S_n(A) ∘ π_V`` with ``S_n(A) = π_W A^{⊗n} ρ_V``."""
    q, r = a.cols, a.rows
    pv, pw = coinvariant_projection(q, n), coinvariant_projection(r, n)
    rho = symmetric_section(q, n)
    t = tensor_power_map(a, n)
    s = pw @ t @ rho
    return pw @ t == s @ pv


# ---------------------------------------------------------------------------
# Free Lie algebra
# ---------------------------------------------------------------------------

def _bracket_with_letter(a: int, vec: list, q: int, n: int) -> list:
    """``[e_a, x] = e_a ⊗ x - x ⊗ e_a`` for ``x`` in ``T_n``."""
    out = [Fraction(0)] * (q ** (n + 1))
    for k, c in enumerate(vec):
        if c:
            out[a * q ** n + k] += c
            out[k * q + a] -= c
    return out


def free_lie_trunc(q: int, d: int, bound: Optional[int] = MAX_DEGREE) -> GradedTruncation:
    """Bases of ``L_n ⊂ T_n`` (columns of ``embeddings[n]``) for ``1 <= n <= d``."""
    _check(q, d, bound)
    g = GradedTruncation(q, d, [0])
    if d == 0:
        return g
    basis = [[Fraction(int(i == j)) for i in range(q)] for j in range(q)]
    g.embeddings[1] = RatMatrix.from_columns(basis, q) if basis else RatMatrix.zeros(q, 0)
    g.dims.append(len(basis))
    for n in range(2, d + 1):
        spans = [_bracket_with_letter(a, col, q, n - 1) for a in range(q) for col in basis]
        m = RatMatrix.from_columns(spans, q ** n) if spans else RatMatrix.zeros(q ** n, 0)
        emb = column_space_basis(m)
        basis = emb.columns()
        g.embeddings[n] = emb
        g.dims.append(len(basis))
    return g


def right_nested_bracket(vec: list, q: int, n: int) -> list:
    """``θ_n`` applied to a vector of ``T_n``."""
    out = [Fraction(0)] * (q ** n)
    cache = {}
    for k, c in enumerate(vec):
        if c:
            img = _theta_word(k, q, n, cache)
            for j, v in img.items():
                out[j] += c * v
    return out


def _theta_word(k: int, q: int, n: int, cache: dict) -> dict:
    key = (k, n)
    if key in cache:
        return cache[key]
    if n == 1:
        res = {k: 1}
    else:
        a, rest = divmod(k, q ** (n - 1))
        inner = _theta_word(rest, q, n - 1, cache)
        res = {}
        for j, c in inner.items():
            res[a * q ** (n - 1) + j] = res.get(a * q ** (n - 1) + j, 0) + c
            res[j * q + a] = res.get(j * q + a, 0) - c
        res = {j: c for j, c in res.items() if c}
    cache[key] = res
    return res


def lie_section_identity(g: GradedTruncation) -> bool:
    """``(1/n) θ_n`` restricts to the identity on ``L_n`` for ``1 <= n <= d``."""
    q = g.base_dim
    for n in range(1, g.max_degree + 1):
        emb = g.embeddings[n]
        for col in emb.columns():
            img = right_nested_bracket(col, q, n)
            if [Fraction(x, n) for x in img] != list(col):
                return False
    return True


def lie_dims_by_brute_force(q: int, d: int) -> list:
    """Ranks of the spans of all right-nested brackets of basis letters."""
    out = [0]
    for n in range(1, d + 1):
        cols = []
        for w in words(q, n):
            vec = [Fraction(0)] * (q ** n)
            vec[word_index(w, q)] = Fraction(1)
            cols.append(right_nested_bracket(vec, q, n))
        out.append(rank(RatMatrix.from_columns(cols, q ** n)) if cols else 0)
    return out


# ---------------------------------------------------------------------------
# PBW
# ---------------------------------------------------------------------------

def pbw_series(lie_dims: list, d: int) -> list:
    """Coefficients of ``Π_n (1 - t^n)^{-l_n}`` through ``t^d``."""
    series = [1] + [0] * d
    for n in range(1, d + 1):
        ln = lie_dims[n] if n < len(lie_dims) else 0
        if not ln:
            continue
        factor = [0] * (d + 1)
        for k in range(d // n + 1):
            factor[n * k] = comb(ln + k - 1, k)
        series = [sum(series[i] * factor[m - i] for i in range(m + 1)) for m in range(d + 1)]
    return series


def pbw_dimension_check(q: int, d: int) -> bool:
    g = free_lie_trunc(q, d)
    return pbw_series(g.dims, d) == [q ** n for n in range(d + 1)]
