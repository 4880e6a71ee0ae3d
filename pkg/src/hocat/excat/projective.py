"""Projective covers, generators and generator-based epimorphism detection."""

from __future__ import annotations

from ..exactlin import RatMatrix, rref
from .hom import LinearSystem, hom_post
from .limits import cokernel
from .objects import FGAB, FILTQ, VECTQ, InstanceId, Mor, Obj, ab, filt, vect


def generator_family(instance: InstanceId) -> list:
    """Projective generators: ``[Q]``, ``[Z]`` or ``[(Q,0), (Q,Q)]``."""
    if instance is VECTQ:
        return [vect(1)]
    if instance is FGAB:
        return [ab(1)]
    return [filt(1), filt(1, [[1]])]


def projective_cover(x: Obj) -> tuple:
    """An admissible epic ``P -> x`` from a finite sum of generators."""
    inst = x.instance
    if inst is VECTQ:
        return x, Mor.identity(x)
    if inst is FGAB:
        p = ab(x.size)
        return p, Mor(p, x, p.instance.matrix_type.identity(x.size))
    w = x.subspace
    n, a = x.dim, w.cols
    # complete a basis of W to a basis of Q^n with standard vectors
    _, piv = rref(w.hstack(RatMatrix.identity(n)))
    extra = [c - a for c in piv if c >= a]
    cols = w.columns() + [[int(i == j) for i in range(n)] for j in extra]
    p = filt(n, [[int(i == j) for i in range(n)] for j in range(a)])
    return p, Mor(p, x, RatMatrix.from_columns(cols, n))


def split_section(p: Mor):
    """Some ``s`` with ``p ∘ s = id`` or ``None``."""
    sys_ = LinearSystem(p.instance)
    k = sys_.unknown(p.dst, p.src)
    sys_.equation([(1, p, k, None)], Mor.identity(p.dst))
    sol = sys_.solve()
    return None if sol is None else sol[0]


def is_projective(x: Obj) -> bool:
    """Every VECTQ and FILTQ object is projective; over FGAB exactly the
    free groups."""
    if x.instance is FGAB:
        return not x.torsion
    return True


def is_projective_by_splitting(x: Obj) -> bool:
    """``x`` is projective iff its projective cover splits."""
    _, p = projective_cover(x)
    return split_section(p) is not None


def detect_epi_via_generators(f: Mor) -> bool:
    """True iff ``Hom(G, f)`` is surjective for every generator ``G``."""
    for g in generator_family(f.instance):
        if not cokernel(hom_post(g, f)).obj.is_zero():
            return False
    return True
