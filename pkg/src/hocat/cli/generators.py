"""Seeded random generators for objects, morphisms, complexes and chain maps.

Everything takes a :class:`random.Random` (or a seed) so that a case is
reproducible from its seed alone.  Sizes stay small on purpose: all
arithmetic is exact and the property suites run thousands of cases.
"""

from __future__ import annotations

import random
from typing import Optional, Union

from ..chain import (
    ChainMap,
    Complex,
    complex_sum,
    cone,
    cycles,
    disk,
    hom_complex,
    sphere,
    zero_complex,
)
from ..excat import (
    FGAB,
    FILTQ,
    VECTQ,
    InstanceId,
    Mor,
    Obj,
    ab,
    filt,
    hom_space,
    is_iso,
    kernel,
    split_section,
    vect,
    zero_object,
)

TORSION_CHOICES = ((), (), (2,), (3,), (4,), (2, 2), (6,), (2, 4))

RngLike = Union[random.Random, int, None]


def as_rng(rng: RngLike) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def random_object(inst: InstanceId, rng: RngLike = None, max_size: int = 2, projective: bool = False) -> Obj:
    rng = as_rng(rng)
    if inst is VECTQ:
        return vect(rng.randint(0, max_size))
    if inst is FILTQ:
        n = rng.randint(0, max_size)
        k = rng.randint(0, n)
        for _ in range(4):
            cols = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
            try:
                return filt(n, cols)
            except ValueError:
                continue
        return filt(n, [[int(i == j) for i in range(n)] for j in range(k)])
    free = rng.randint(0, min(max_size, 2))
    if projective:
        return ab(max(free, rng.randint(0, max_size)))
    tors = rng.choice(TORSION_CHOICES)
    while free + len(tors) > max(max_size, 1):
        tors = tors[1:]
    return ab(free, tors)


def random_mor(a: Obj, b: Obj, rng: RngLike = None, density: float = 0.7, spread: int = 2) -> Mor:
    """A random element of ``Hom(a, b)`` with small coordinates."""
    rng = as_rng(rng)
    h = hom_space(a, b)
    coords = [rng.randint(-spread, spread) if rng.random() < density else 0 for _ in range(h.obj.size)]
    return h.element(coords)


def random_morphism(inst: InstanceId, rng: RngLike = None, max_size: int = 3) -> Mor:
    rng = as_rng(rng)
    a = random_object(inst, rng, max_size)
    b = random_object(inst, rng, max_size)
    return random_mor(a, b, rng, density=rng.choice((0.3, 0.6, 1.0)))


def random_automorphism(x: Obj, rng: RngLike = None, tries: int = 6):
    """``(φ, φ^{-1})`` for a random automorphism of ``x``."""
    rng = as_rng(rng)
    one = Mor.identity(x)
    for _ in range(tries):
        phi = one + random_mor(x, x, rng, density=0.4, spread=1)
        if x.instance is FGAB and rng.random() < 0.5:
            phi = -phi
        if is_iso(phi):
            inv = split_section(phi)
            if inv is not None and phi @ inv == one and inv @ phi == one:
                return phi, inv
    return one, one


def conjugate_complex(x: Complex, rng: RngLike = None):
    """Transport ``x`` along random degreewise automorphisms; returns the new
    complex and the isomorphism ``x -> new`` with its inverse."""
    rng = as_rng(rng)
    isos = {n: random_automorphism(x.obj(n), rng) for n in x.degrees()}

    def phi(n):
        return isos[n][0] if n in isos else Mor.identity(x.obj(n))

    def inv(n):
        return isos[n][1] if n in isos else Mor.identity(x.obj(n))

    y = Complex(x.instance, x.objects, {n: phi(n - 1) @ x.d(n) @ inv(n) for n in x.degrees()})
    fwd = ChainMap(x, y, {n: phi(n) for n in x.degrees()})
    back = ChainMap(y, x, {n: inv(n) for n in x.degrees()})
    return y, fwd, back


def _random_cell(inst, rng, lo, hi, projective=False, max_size=1):
    e = random_object(inst, rng, max_size, projective=projective)
    if e.is_zero():
        e = random_object(inst, rng, max_size, projective=projective)
    if hi > lo and rng.random() < 0.5:
        return disk(rng.randint(lo + 1, hi), e)
    return sphere(rng.randint(lo, hi), e)


def random_sum_of_cells(inst, rng, pieces: int, lo: int, hi: int, projective: bool = False,
                        disks_only: bool = False) -> Complex:
    cells = []
    for _ in range(pieces):
        if disks_only:
            e = random_object(inst, rng, 1, projective=projective)
            cells.append(disk(rng.randint(lo + 1, hi), e) if hi > lo else zero_complex(inst))
        else:
            cells.append(_random_cell(inst, rng, lo, hi, projective))
    if not cells:
        return zero_complex(inst)
    return complex_sum(*cells)[0]


def random_chain_map(x: Complex, y: Complex, rng: RngLike = None, spread: int = 2) -> ChainMap:
    """A random degree-0 cycle of ``Hom(x, y)``, i.e. a random chain map."""
    rng = as_rng(rng)
    hc = hom_complex(x, y)
    z = kernel(hc.differential(0))
    if z.obj.is_zero():
        return ChainMap.zero(x, y)
    coords = [rng.randint(-spread, spread) for _ in range(z.obj.size)]
    v = [sum(z.mor.matrix.data[r][t] * coords[t] for t in range(len(coords))) for r in range(z.mor.dst.size)]
    return ChainMap(x, y, hc.from_coords(0, v))


def random_null_homotopic(x: Complex, y: Complex, rng: RngLike = None) -> ChainMap:
    """``d H + H d`` for a random degree-one family ``H``."""
    rng = as_rng(rng)
    hs = {}
    for i in x.degrees():
        if not y.obj(i + 1).is_zero():
            hs[i] = random_mor(x.obj(i), y.obj(i + 1), rng, density=0.6)
    comps = {}
    for i in x.degrees():
        f = Mor.zero(x.obj(i), y.obj(i))
        if i in hs:
            f = f + y.d(i + 1) @ hs[i]
        if i - 1 in hs:
            f = f + hs[i - 1] @ x.d(i)
        comps[i] = f
    return ChainMap(x, y, comps)


def random_complex(instance: InstanceId, seed: RngLike = None, budget: int = 3, lo: int = 0, hi: int = 2,
                   projective: bool = False) -> Complex:
    """Cones of random chain maps between sums of spheres and disks,
    conjugated by random isomorphisms.  ``budget`` bounds the number of
    cells on each side; budget ``0`` gives the zero complex."""
    rng = as_rng(seed)
    if budget <= 0:
        return zero_complex(instance)
    kind = rng.random()
    if kind < 0.35 or hi - 1 < lo:
        x = random_sum_of_cells(instance, rng, rng.randint(1, budget), lo, hi, projective)
    elif kind < 0.5:
        a = random_sum_of_cells(instance, rng, rng.randint(1, budget), lo, hi - 1, projective)
        x = cone(ChainMap.identity(a)).complex
    else:
        a = random_sum_of_cells(instance, rng, rng.randint(1, max(1, budget - 1)), lo, hi - 1, projective)
        b = random_sum_of_cells(instance, rng, rng.randint(1, max(1, budget - 1)), lo, hi, projective)
        x = cone(random_chain_map(a, b, rng)).complex
    return conjugate_complex(x, rng)[0]


def random_acyclic(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0, hi: int = 2,
                   projective: bool = False) -> Complex:
    rng = as_rng(rng)
    k = rng.random()
    if k < 0.25 and not projective and hi > lo:
        # cone of a resolution: acyclic, and over FGAB usually not contractible
        from ..resolve import resolve_complex
        x = cone(resolve_complex(random_complex(instance, rng, budget, lo, hi - 1)).map).complex
    elif k < 0.6 or hi - 1 < lo:
        x = random_sum_of_cells(instance, rng, rng.randint(1, budget), lo, hi, projective, disks_only=True)
    else:
        a = random_sum_of_cells(instance, rng, rng.randint(1, budget), lo, hi - 1, projective)
        x = cone(ChainMap.identity(a)).complex
    return conjugate_complex(x, rng)[0]


def random_homotopy_equivalence(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0,
                                hi: int = 2):
    """``(f, g)`` with both composites homotopic to the identity:
    ``X -> X ⊕ D`` for a contractible ``D``, disguised by an automorphism and
    a null-homotopic perturbation."""
    rng = as_rng(rng)
    x = random_complex(instance, rng, budget, lo, hi)
    d = random_acyclic(instance, rng, budget, lo, hi, projective=True)
    s, inj, proj = complex_sum(x, d)
    y, fwd, back = conjugate_complex(s, rng)
    f = fwd @ inj[0]
    g = proj[0] @ back
    f = f + random_null_homotopic(x, y, rng)
    return f, g


def random_quasi_iso(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0, hi: int = 2) -> ChainMap:
    """Homotopy equivalences, or resolutions (quasi-isomorphisms that are
    usually not homotopy equivalences over ``FGAB``)."""
    from ..resolve import resolve_complex
    rng = as_rng(rng)
    if rng.random() < 0.5:
        return random_homotopy_equivalence(instance, rng, budget, lo, hi)[0]
    x = random_complex(instance, rng, budget, lo, hi)
    return resolve_complex(x).map


def random_map(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0, hi: int = 2) -> ChainMap:
    """A chain map drawn from several families so that quasi-isomorphisms,
    monics and epics all show up with reasonable frequency."""
    rng = as_rng(rng)
    k = rng.random()
    if k < 0.25:
        return random_quasi_iso(instance, rng, budget, lo, hi)
    x = random_complex(instance, rng, budget, lo, hi)
    if k < 0.4:
        y = random_complex(instance, rng, budget, lo, hi)
        s, inj, proj = complex_sum(x, y)
        return inj[0] if rng.random() < 0.5 else proj[0]
    y = random_complex(instance, rng, budget, lo, hi)
    if k < 0.5:
        return random_null_homotopic(x, y, rng)
    return random_chain_map(x, y, rng)


def random_cofibration_candidate(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0,
                                 hi: int = 2) -> ChainMap:
    """Maps that are cofibrations about half the time."""
    from ..model import CH_GEQ0, CH_PLUS, factor_cof_triv_fib, generating_cofibrations
    rng = as_rng(rng)
    k = rng.random()
    if k < 0.2:
        flavor = CH_GEQ0 if lo >= 0 else CH_PLUS
        return rng.choice(generating_cofibrations(instance, flavor, max(hi, 1)))
    if k < 0.45:
        f = random_map(instance, rng, budget, lo, hi)
        return factor_cof_triv_fib(f, CH_GEQ0 if lo >= 0 else CH_PLUS).left
    if k < 0.7:
        x = random_complex(instance, rng, budget, lo, hi)
        y = random_sum_of_cells(instance, rng, rng.randint(1, 2), lo, hi)
        s, inj, _ = complex_sum(x, y)
        t, fwd, _ = conjugate_complex(s, rng)
        return fwd @ inj[0]
    return random_map(instance, rng, budget, lo, hi)


def random_ses(instance: InstanceId, rng: RngLike = None, budget: int = 2, lo: int = 0, hi: int = 2,
               acyclic_kernel: Optional[bool] = None):
    """A degreewise split short exact sequence ``A -> B -> C`` of complexes,
    built from a cone and disguised by an automorphism of ``B``."""
    rng = as_rng(rng)
    if acyclic_kernel is None:
        acyclic_kernel = rng.random() < 0.5
    if acyclic_kernel:
        a = random_acyclic(instance, rng, budget, lo, hi)
    else:
        a = random_complex(instance, rng, budget, lo, hi)
    c0 = random_complex(instance, rng, budget, lo, max(lo, hi - 1))
    g = random_chain_map(c0, a, rng)
    b, tau, pi = cone(g)
    b2, fwd, back = conjugate_complex(b, rng)
    return fwd @ tau, pi @ back



def random_quasi_iso_from(a: Complex, rng: RngLike = None) -> ChainMap:
    """A quasi-isomorphism out of ``a``: an inclusion ``a -> a ⊕ acyclic``
    or an identity perturbed by a null-homotopic map, then disguised."""
    rng = as_rng(rng)
    lo, hi = (a.lo, a.hi) if not a.is_zero() else (0, 1)
    if rng.random() < 0.6:
        e = random_acyclic(a.instance, rng, 2, lo, max(hi, lo + 1))
        s, inj, _ = complex_sum(a, e)
        y, fwd, _ = conjugate_complex(s, rng)
        return fwd @ inj[0] + random_null_homotopic(a, y, rng)
    y, fwd, _ = conjugate_complex(a, rng)
    return fwd + random_null_homotopic(a, y, rng)


def random_quasi_iso_into(b: Complex, rng: RngLike = None) -> ChainMap:
    """A quasi-isomorphism into ``b``: a resolution, or a projection
    ``b ⊕ acyclic -> b``, disguised by an automorphism of the source."""
    from ..resolve import resolve_complex
    rng = as_rng(rng)
    if rng.random() < 0.4:
        return resolve_complex(b).map
    lo, hi = (b.lo, b.hi) if not b.is_zero() else (0, 1)
    e = random_acyclic(b.instance, rng, 2, lo, max(hi, lo + 1))
    s, _, proj = complex_sum(b, e)
    x, _, back = conjugate_complex(s, rng)
    return proj[0] @ back + random_null_homotopic(x, b, rng)


def random_map_from(y: Complex, rng: RngLike = None) -> ChainMap:
    """A chain map out of ``y`` from a mix of quasi-isomorphisms, cone
    inclusions, arbitrary maps and zero maps."""
    rng = as_rng(rng)
    inst = y.instance
    lo, hi = (y.lo, y.hi) if not y.is_zero() else (0, 1)
    k = rng.random()
    if k < 0.35:
        return random_quasi_iso_from(y, rng)
    if k < 0.6:
        w = random_complex(inst, rng, 2, lo, hi) if rng.random() < 0.5 else random_acyclic(inst, rng, 2, lo, max(hi, lo + 1))
        return cone(random_chain_map(w, y, rng)).tau
    z = random_complex(inst, rng, 2, lo, hi)
    if k < 0.9:
        return random_chain_map(y, z, rng)
    return ChainMap.zero(y, z)


def random_cofibration_from(a: Complex, rng: RngLike = None) -> ChainMap:
    """``a -> cone(h)`` for a random ``h: W -> a`` with ``W`` degreewise
    projective; the cokernel is ``W[-1]``."""
    rng = as_rng(rng)
    lo, hi = (a.lo, a.hi) if not a.is_zero() else (0, 1)
    w = random_complex(a.instance, rng, 2, lo, hi, projective=True)
    c, tau, _ = cone(random_chain_map(w, a, rng))
    y, fwd, _ = conjugate_complex(c, rng)
    return fwd @ tau


__all__ = [name for name in dir() if name.startswith("random") or name in ("as_rng", "conjugate_complex")]
