"""The projective model structure on bounded complexes.

Two flavors are supported: ``CH_GEQ0`` (complexes in degrees ``>= 0``,
fibrations are admissible epics in positive degrees) and ``CH_PLUS``
(bounded below, fibrations admissible epics in every degree).  Weak
equivalences are quasi-isomorphisms in both.  Cofibrations are detected as
degreewise admissible monics with degreewise projective cokernel, which is
exact for bounded-below cokernels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .chain import (
    ChainMap,
    Complex,
    chain_cokernel,
    chain_lift,
    complex_sum,
    disk,
    is_quasi_iso,
    is_split_exact,
    sphere,
    zero_complex,
)
from .excat import (
    CategoryError,
    InstanceId,
    Mor,
    generator_family,
    is_admissible_epi,
    is_admissible_mono,
    is_projective,
    projective_cover,
)
from .resolve import attach_cells


class ModelFlavor(enum.Enum):
    CH_PLUS = "plus"
    CH_GEQ0 = "geq0"


CH_PLUS = ModelFlavor.CH_PLUS
CH_GEQ0 = ModelFlavor.CH_GEQ0


@dataclass(frozen=True)
class ModelClass:
    is_weak_equivalence: bool
    is_fibration: bool
    is_cofibration: bool
    is_trivial_fibration: bool
    is_trivial_cofibration: bool


class NoLift(RuntimeError):
    """A lifting problem that should have been solvable was not."""


def _check_range(flavor: ModelFlavor, *cs: Complex):
    if flavor is CH_GEQ0:
        for c in cs:
            if not c.is_zero() and c.lo < 0:
                raise CategoryError("complex has entries in negative degrees")


def _fibration_degrees(f: ChainMap, flavor: ModelFlavor):
    return [n for n in f.degrees() if flavor is CH_PLUS or n > 0]


def is_fibration(f: ChainMap, flavor: ModelFlavor) -> bool:
    return all(is_admissible_epi(f[n]) for n in _fibration_degrees(f, flavor))


def is_cofibration(f: ChainMap) -> bool:
    if not all(is_admissible_mono(f[n]) for n in f.degrees()):
        return False
    c, _ = chain_cokernel(f)
    return all(is_projective(c.obj(n)) for n in c.degrees())


def cokernel_is_split_projective(f: ChainMap) -> bool:
    """The cokernel complex is split exact with projective entries."""
    c, _ = chain_cokernel(f)
    return all(is_projective(c.obj(n)) for n in c.degrees()) and is_split_exact(c)


def classify_map_model(f: ChainMap, flavor: ModelFlavor) -> ModelClass:
    _check_range(flavor, f.src, f.dst)
    weq = is_quasi_iso(f)
    fib = is_fibration(f, flavor)
    cof = is_cofibration(f)
    triv_cof = cof and cokernel_is_split_projective(f)
    return ModelClass(weq, fib, cof, fib and weq, triv_cof)


@dataclass(frozen=True)
class FactorizationWitness:
    kind: str            # "trivcof-fib" or "cof-trivfib"
    left: ChainMap
    middle: Complex
    right: ChainMap

    def composite(self) -> ChainMap:
        return self.right @ self.left


def factor_triv_cof_fib(f: ChainMap, flavor: ModelFlavor, check: bool = True) -> FactorizationWitness:
    """``X -> X ⊕ ⊕ D^n(P_n) -> Y`` with ``P_n -> Y_n`` projective covers,
    added only in degrees where ``f`` is not already an admissible epic.

    ``check=False`` skips classifying the factors (callers that classify
    them independently)."""
    _check_range(flavor, f.src, f.dst)
    x, y = f.src, f.dst
    disks, covers = [], []
    for n in _fibration_degrees(f, flavor):
        if y.obj(n).is_zero() or is_admissible_epi(f[n]):
            continue
        p, u = projective_cover(y.obj(n))
        dn = disk(n, p)
        disks.append(dn)
        covers.append(ChainMap(dn, y, {n: u, n - 1: y.d(n) @ u}))
    if not disks:
        left = ChainMap.identity(x)
        return _verified("trivcof-fib", left, x, f, f, flavor, check)
    m, inj, proj = complex_sum(x, *disks)
    right = f @ proj[0]
    for c, pr in zip(covers, proj[1:]):
        right = right + c @ pr
    return _verified("trivcof-fib", inj[0], m, right, f, flavor, check)


def factor_cof_triv_fib(f: ChainMap, flavor: ModelFlavor, cell_budget: Optional[int] = None,
                        check: bool = True) -> FactorizationWitness:
    """Cell attachment: disks to make the right map epic, then sphere-to-disk
    cells until the right map is a quasi-isomorphism."""
    _check_range(flavor, f.src, f.dst)
    floor = 0 if flavor is CH_GEQ0 else None
    left, right = attach_cells(f, floor=floor, budget=cell_budget)
    return _verified("cof-trivfib", left, left.dst, right, f, flavor, check)


def _verified(kind, left, middle, right, f, flavor, check=True) -> FactorizationWitness:
    w = FactorizationWitness(kind, left, middle, right)
    if w.composite() != f:
        raise AssertionError("factorization does not compose to the input")
    if not check:
        return w
    if kind == "trivcof-fib":
        ok = is_fibration(right, flavor) and is_cofibration(left) and cokernel_is_split_projective(left)
    else:
        ok = is_fibration(right, flavor) and is_cofibration(left) and is_quasi_iso(right)
    if not ok:
        raise AssertionError(f"{kind} factorization has the wrong classes")
    return w


@dataclass(frozen=True)
class LiftingProblem:
    """``top: A -> C``, ``left: A -> B``, ``right: C -> D``, ``bottom: B -> D``."""

    top: ChainMap
    bottom: ChainMap
    left: ChainMap
    right: ChainMap

    def commutes(self) -> bool:
        return self.right @ self.top == self.bottom @ self.left


@dataclass(frozen=True)
class LiftWitness:
    problem: LiftingProblem
    diagonal: ChainMap

    def verify(self) -> bool:
        p = self.problem
        return self.diagonal @ p.left == p.top and p.right @ self.diagonal == p.bottom


def solve_lifting(p: LiftingProblem, flavor: ModelFlavor, check: bool = True) -> LiftWitness:
    if not p.commutes():
        raise CategoryError("lifting square does not commute")
    if check:
        cl, cr = classify_map_model(p.left, flavor), classify_map_model(p.right, flavor)
        if not ((cl.is_cofibration and cr.is_trivial_fibration)
                or (cl.is_trivial_cofibration and cr.is_fibration)):
            raise CategoryError("lifting problem is not well posed")
    h = chain_lift(p.left, p.right, top=p.top, bottom=p.bottom)
    if h is None:
        raise NoLift("no lift exists")
    w = LiftWitness(p, h)
    if not w.verify():
        raise AssertionError("lift solver returned an invalid diagonal")
    return w


def retract_argument_check(f: ChainMap, flavor: ModelFlavor, cell_budget: Optional[int] = None) -> bool:
    """``f`` lifts against the right factor of its own cofibration/trivial
    fibration factorization, exhibiting it as a retract of the left factor."""
    w = factor_cof_triv_fib(f, flavor, cell_budget)
    h = chain_lift(f, w.right, top=w.left, bottom=ChainMap.identity(f.dst))
    return h is not None


def generating_cofibrations(instance: InstanceId, flavor: ModelFlavor, bound: int = 2) -> list:
    """``0 -> S^0(G)``, ``0 -> D^n(G)``, ``S^{n-1}(G) -> D^n(G)`` and
    ``0 -> S^n(G)`` over the generators, degrees truncated at ``bound``."""
    zero = zero_complex(instance)
    out = []
    if flavor is CH_GEQ0:
        disk_degrees = range(1, bound + 1)
        sphere_degrees = range(0, bound + 1)
    else:
        disk_degrees = range(-bound + 1, bound + 1)
        sphere_degrees = range(-bound, bound + 1)
    for g in generator_family(instance):
        out.append(ChainMap.zero(zero, sphere(0, g)))
        for n in disk_degrees:
            out.append(ChainMap.zero(zero, disk(n, g)))
        for n in disk_degrees:
            s, dn = sphere(n - 1, g), disk(n, g)
            out.append(ChainMap(s, dn, {n - 1: Mor.identity(g)}))
        for n in sphere_degrees:
            if n != 0:
                out.append(ChainMap.zero(zero, sphere(n, g)))
    return out
