"""Kernels, cokernels, admissibility analysis, pushouts and pullbacks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from ..exactlin import (
    IntMatrix,
    RatMatrix,
    column_space_basis,
    int_kernel_basis,
    inverse,
    nullspace_basis,
    rank,
)
from .hom import LinearSystem, factor_through
from .objects import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    Mor,
    Obj,
    direct_sum,
    filt,
    present,
    vect,
)


class Sub(NamedTuple):
    """An object together with a structure map (kernel inclusion, cokernel
    projection, ...)."""

    obj: Obj
    mor: Mor


# -- subspace helpers (FILTQ) -------------------------------------------------

def _span(m: RatMatrix) -> RatMatrix:
    return column_space_basis(m)


def _intersect(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    n = a.rows
    if a.cols == 0 or b.cols == 0:
        return RatMatrix.zeros(n, 0)
    null = nullspace_basis(a.hstack(-b))
    return _span(a @ null.select_rows(range(a.cols)))


def _coords_in(basis: RatMatrix, vectors: RatMatrix) -> RatMatrix:
    from ..exactlin import solve_linear
    sol = solve_linear(basis, vectors)
    if sol is None:
        raise CategoryError("vectors are not in the span of the basis")
    return sol


def _fg_relations(x: Obj) -> IntMatrix:
    """Columns generating the relation lattice of an FGAB object."""
    cols = [[o if i == j else 0 for i in range(x.size)] for j, o in enumerate(x.orders) if o]
    return IntMatrix.from_columns(cols, x.size) if cols else IntMatrix.zeros(x.size, 0)


def _fg_subgroup(x: Obj, gens: IntMatrix) -> Sub:
    """The subgroup of ``x`` generated by the columns of ``gens``."""
    k = gens.cols
    rel_x = _fg_relations(x)
    lattice = int_kernel_basis(gens.hstack(rel_x))
    rel = lattice.select_rows(range(k))
    pres = present(k, rel)
    return Sub(pres.obj, Mor(pres.obj, x, gens @ pres.from_norm))


# -- kernels and cokernels ----------------------------------------------------

def kernel(f: Mor) -> Sub:
    """Kernel object with its inclusion ``k``; ``f ∘ k = 0``."""
    x = f.src
    inst = f.instance
    if inst is VECTQ:
        n = nullspace_basis(f.matrix)
        k = vect(n.cols)
        return Sub(k, Mor(k, x, n))
    if inst is FILTQ:
        n = nullspace_basis(f.matrix)
        w = x.subspace
        if w.cols:
            inner = w @ nullspace_basis(f.matrix @ w)
            sub = _coords_in(n, _span(inner)) if inner.cols else RatMatrix.zeros(n.cols, 0)
        else:
            sub = RatMatrix.zeros(n.cols, 0)
        k = filt(n.cols, _span(sub) if sub.cols else None)
        return Sub(k, Mor(k, x, n))
    y = f.dst
    lattice = int_kernel_basis(f.matrix.hstack(_fg_relations(y)))
    gens = lattice.select_rows(range(x.size))
    return _fg_subgroup(x, gens)


def cokernel(f: Mor) -> Sub:
    """Cokernel object with its projection ``c``; ``c ∘ f = 0``."""
    y = f.dst
    inst = f.instance
    if inst is FGAB:
        pres = present(y.size, f.matrix.hstack(_fg_relations(y)))
        return Sub(pres.obj, Mor(y, pres.obj, pres.to_norm))
    q = nullspace_basis(f.matrix.transpose()).transpose()
    if inst is VECTQ:
        c = vect(q.rows)
    else:
        img = q @ y.subspace
        c = filt(q.rows, _span(img) if img.cols else None)
    return Sub(c, Mor(y, c, q))


def image(f: Mor) -> Sub:
    """``Ker(Coker f) -> dst``."""
    return kernel(cokernel(f).mor)


def coimage(f: Mor) -> Sub:
    """``src -> Coker(Ker f)``."""
    return cokernel(kernel(f).mor)


# -- admissibility --------------------------------------------------------------

def is_strict(f: Mor) -> bool:
    """FILTQ closed form: ``f(W) = W' ∩ f(V)``.  Always true elsewhere."""
    if f.instance is not FILTQ:
        return True
    m = f.matrix
    fw = m @ f.src.subspace
    fw = _span(fw) if fw.cols else RatMatrix.zeros(f.dst.size, 0)
    fv = _span(m) if m.cols else RatMatrix.zeros(f.dst.size, 0)
    return fw == _intersect(f.dst.subspace, fv)


def is_iso(f: Mor) -> bool:
    if f.src.size != f.dst.size:
        return False
    if f.instance is FGAB:
        return kernel(f).obj.is_zero() and cokernel(f).obj.is_zero()
    if inverse(f.matrix) is None:
        return False
    if f.instance is FILTQ:
        return _span(f.matrix @ f.src.subspace) == f.dst.subspace if f.src.sub_dim else f.dst.sub_dim == 0
    return True


@dataclass(frozen=True)
class Classification:
    """Full admissibility record of a morphism."""

    is_mono: bool
    is_epi: bool
    is_admissible_mono: bool
    is_admissible_epi: bool
    is_weakly_admissible: bool
    is_admissible: bool
    kernel: Optional[Sub]
    cokernel: Optional[Sub]
    coimage: Optional[Sub]
    image: Optional[Sub]
    coimage_to_image: Optional[Mor]

    @property
    def coimage_image_iso(self) -> bool:
        return self.coimage_to_image is not None and is_iso(self.coimage_to_image)


def classify(f: Mor) -> Classification:
    ker = kernel(f)
    cok = cokernel(f)
    coim = cokernel(ker.mor)
    im = kernel(cok.mor)
    induced = factor_through(f, left=im.mor, right=coim.mor)
    mono = ker.obj.is_zero()
    epi = cok.obj.is_zero()
    strict = is_strict(f)
    # every morphism in these three instances is weakly admissible: kernels
    # and cokernels exist and the structure maps are admissible
    return Classification(
        is_mono=mono,
        is_epi=epi,
        is_admissible_mono=mono and strict,
        is_admissible_epi=epi and strict,
        is_weakly_admissible=True,
        is_admissible=strict,
        kernel=ker,
        cokernel=cok,
        coimage=coim,
        image=im,
        coimage_to_image=induced,
    )


def is_admissible_mono(f: Mor) -> bool:
    return kernel(f).obj.is_zero() and is_strict(f)


def is_admissible_epi(f: Mor) -> bool:
    return cokernel(f).obj.is_zero() and is_strict(f)


def epi_mono_factorization(f: Mor) -> tuple:
    """``(e, m)`` with ``f = m ∘ e``, ``e: src -> Coim f`` admissible epic and
    ``m: Coim f -> dst``; ``m`` is an admissible monic iff ``f`` is admissible."""
    coim = cokernel(kernel(f).mor)
    m = factor_through(f, right=coim.mor)
    return coim.mor, m


def is_short_exact(i: Mor, p: Mor) -> bool:
    """Is ``(i, p)`` a kernel-cokernel pair of admissible morphisms?"""
    if i.dst != p.src or not (p @ i).is_zero():
        return False
    if not (is_admissible_mono(i) and is_admissible_epi(p)):
        return False
    k = kernel(p)
    u = factor_through(i, left=k.mor)
    return u is not None and is_iso(u)


# -- pushouts and pullbacks ---------------------------------------------------

class Square(NamedTuple):
    """``obj`` is the new corner; ``along`` the base-changed map of the
    distinguished (admissible) morphism, ``other`` the remaining edge."""

    obj: Obj
    along: Mor
    other: Mor


def pushout_along_mono(i: Mor, f: Mor) -> Square:
    """Pushout of the admissible monic ``i: A -> B`` along ``f: A -> A'``.

    Returns ``(B', i', f')`` with ``i': A' -> B'`` an admissible monic and
    ``f': B -> B'``.
    """
    if i.src != f.src:
        raise CategoryError("pushout needs a common source")
    if not is_admissible_mono(i):
        raise CategoryError("pushout_along_mono requires an admissible monic")
    s = direct_sum(i.dst, f.dst)
    m = s.injections[0] @ i - s.injections[1] @ f
    c = cokernel(m)
    f2 = c.mor @ s.injections[0]
    i2 = c.mor @ s.injections[1]
    if not is_short_exact(m, c.mor) or not is_admissible_mono(i2):
        raise AssertionError("pushout square failed its exactness check")
    return Square(c.obj, i2, f2)


def pullback_along_epi(p: Mor, f: Mor) -> Square:
    """Pullback of the admissible epic ``p: X -> Y`` along ``f: A -> Y``.

    Returns ``(A', q, k)`` with ``q: A' -> A`` an admissible epic and
    ``k: A' -> X``.
    """
    if p.dst != f.dst:
        raise CategoryError("pullback needs a common target")
    if not is_admissible_epi(p):
        raise CategoryError("pullback_along_epi requires an admissible epic")
    s = direct_sum(p.src, f.src)
    m = p @ s.projections[0] - f @ s.projections[1]
    kk = kernel(m)
    k = s.projections[0] @ kk.mor
    q = s.projections[1] @ kk.mor
    if not is_short_exact(kk.mor, m) or not is_admissible_epi(q):
        raise AssertionError("pullback square failed its exactness check")
    # the kernel of p is, via k, a kernel of q
    g = kernel(p).mor
    sys_ = LinearSystem(p.instance)
    u = sys_.unknown(g.src, kk.obj)
    sys_.equation([(1, q, u, None)], None, src=g.src, dst=f.src)
    sys_.equation([(1, k, u, None)], g)
    sol = sys_.solve()
    if sol is None:
        raise AssertionError("kernel comparison map does not exist")
    gk = sol[0]
    kq = kernel(q)
    v = factor_through(gk, left=kq.mor)
    if v is None or not is_iso(v):
        raise AssertionError("pulled-back kernel differs from the original kernel")
    return Square(kk.obj, q, k)
