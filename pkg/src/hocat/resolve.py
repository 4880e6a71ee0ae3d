"""Projective resolutions, comparison lifts, Ext and the homology long exact
sequence.

Resolutions come out of :func:`attach_cells`, a finite cell-attachment loop
that turns any chain map ``f: X -> Y`` into ``X -> M -> Y`` where the first
map is a degreewise split inclusion with projective cokernel and the second
is a degreewise admissible epic quasi-isomorphism.  Resolving ``Y`` is the
special case ``X = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chain import (
    ChainMap,
    Complex,
    chain_lift,
    cycles,
    homology,
    hom_complex,
    is_degreewise_projective,
    is_quasi_iso,
    sphere,
    zero_complex,
)
from .excat import (
    CategoryError,
    Mor,
    Obj,
    direct_sum,
    factor_through,
    image,
    is_admissible_epi,
    is_short_exact,
    kernel,
    projective_cover,
    zero_object,
)


class CellBudgetExceeded(RuntimeError):
    """The cell-attachment loop needed more cells than allowed."""


@dataclass
class _Builder:
    """A complex ``M`` under construction with maps ``X -> M -> Y``."""

    x: Complex
    y: Complex
    objects: dict
    diffs: dict
    left: dict
    right: dict
    cells: int = 0

    def add(self, n: int, p: Obj, dmap: Mor, rmap: Mor):
        """Add the summand ``p`` in degree ``n`` with ``d|p = dmap`` and
        ``right|p = rmap``; returns the injection of ``p``."""
        old = self.objects.get(n) or zero_object(self.x.instance)
        s = direct_sum(old, p)
        i_old, i_new = s.injections
        p_old, p_new = s.projections
        self.objects[n] = s.obj
        d_old = self.diffs.get(n)
        d_here = dmap @ p_new
        if d_old is not None:
            d_here = d_here + d_old @ p_old
        self.diffs[n] = d_here
        up = self.diffs.get(n + 1)
        if up is not None:
            self.diffs[n + 1] = i_old @ up
        r_old = self.right.get(n)
        r_here = rmap @ p_new
        if r_old is not None:
            r_here = r_here + r_old @ p_old
        self.right[n] = r_here
        if n in self.left:
            self.left[n] = i_old @ self.left[n]
        self.cells += p.size
        return i_new

    def complex(self) -> Complex:
        return Complex(self.x.instance, self.objects, self.diffs)

    def maps(self):
        m = self.complex()
        return (ChainMap(self.x, m, {n: f for n, f in self.left.items() if f.dst == m.obj(n)}),
                ChainMap(m, self.y, {n: f for n, f in self.right.items() if f.src == m.obj(n)}))


def attach_cells(f: ChainMap, floor: Optional[int] = None, budget: Optional[int] = None):
    """Factor ``f`` as ``X -> M -> Y`` (inclusion, then trivial fibration).

    Cells are never placed below ``floor`` (default: the lowest degree of
    ``X`` or ``Y``).  The loop first adds disks ``D^n(P)`` on projective
    covers of ``Y_n`` wherever ``f_n`` is not an admissible epic; a sphere
    is used instead at the floor or when the cover lands in cycles.  Then it
    kills the cycles of the kernel complex from the bottom up with cells
    ``S^n(P) -> D^{n+1}(P)``.
    """
    x, y = f.src, f.dst
    inst = f.instance
    if floor is None:
        nz = [c.lo for c in (x, y) if not c.is_zero()]
        floor = min(nz) if nz else 0
    if budget is None:
        budget = 10 * (x.total_size() + y.total_size())
    b = _Builder(x, y, dict(x.objects), dict(x.diffs),
                 {n: Mor.identity(x.obj(n)) for n in x.degrees()},
                 {n: f[n] for n in x.degrees()})

    def check_budget():
        if b.cells > budget:
            raise CellBudgetExceeded(f"more than {budget} cells needed")

    def zero_map(a, c):
        return Mor.zero(a, c)

    def m_obj(n):
        o = b.objects.get(n)
        return o if o is not None else zero_object(inst)

    def right_at(n):
        r = b.right.get(n)
        return r if r is not None else Mor.zero(m_obj(n), y.obj(n))

    # make the right map degreewise admissible epic
    for n in y.degrees():
        if n < floor:
            raise CategoryError(f"target has an entry in degree {n}, below {floor}")
        if is_admissible_epi(right_at(n)):
            continue
        p, u = projective_cover(y.obj(n))
        if n == floor or (y.d(n) @ u).is_zero():
            b.add(n, p, zero_map(p, m_obj(n - 1)), u)
        else:
            j = b.add(n - 1, p, zero_map(p, m_obj(n - 2)), y.d(n) @ u)
            b.add(n, p, j, u)
        check_budget()

    # kill the cycles of ker(right) from the bottom up
    n = min([floor] + list(b.objects))
    while b.objects and n <= max(b.objects):
        here = m_obj(n)
        k_here = kernel(right_at(n))
        k_up = kernel(right_at(n + 1))
        d_here = b.diffs.get(n) or Mor.zero(here, m_obj(n - 1))
        kd = factor_through(d_here @ k_here.mor, left=kernel(right_at(n - 1)).mor)
        z = kernel(kd)
        d_up = b.diffs.get(n + 1) or Mor.zero(m_obj(n + 1), here)
        to_z = factor_through(d_up @ k_up.mor, left=k_here.mor @ z.mor)
        if not is_admissible_epi(to_z):
            p, u = projective_cover(z.obj)
            b.add(n + 1, p, k_here.mor @ z.mor @ u, zero_map(p, y.obj(n + 1)))
            check_budget()
        n += 1
    return b.maps()


@dataclass(frozen=True)
class Resolution:
    """``map: resolvent -> target``, a degreewise admissible epic
    quasi-isomorphism from a degreewise projective complex."""

    target: Complex
    resolvent: Complex
    map: ChainMap

    def verify(self) -> bool:
        return (is_degreewise_projective(self.resolvent)
                and all(is_admissible_epi(self.map[n]) for n in self.map.degrees())
                and is_quasi_iso(self.map))


def resolve_complex(x: Complex, budget: Optional[int] = None) -> Resolution:
    _, r = attach_cells(ChainMap.zero(zero_complex(x.instance), x), floor=x.lo if not x.is_zero() else 0,
                        budget=budget)
    res = Resolution(x, r.src, r)
    if not res.verify():
        raise AssertionError("resolution failed its own postconditions")
    return res


def resolve_object(a: Obj) -> Resolution:
    return resolve_complex(sphere(0, a))


def comparison_lift(f: Mor, p: Resolution, q: Resolution, reverse: bool = False) -> ChainMap:
    """A chain map ``P -> Q`` over ``f`` between resolutions of objects.

    Unique up to homotopy; ``reverse`` changes the solver's search order.
    """
    if p.target.obj(0) != f.src or q.target.obj(0) != f.dst:
        raise CategoryError("resolutions do not match the morphism")
    fm = ChainMap(p.target, q.target, {0: f})
    zero = zero_complex(f.instance)
    lift = chain_lift(ChainMap.zero(zero, p.resolvent), q.map, bottom=fm @ p.map, reverse=reverse)
    if lift is None:
        raise CategoryError("no comparison lift; is q a resolution?")
    return lift


def ext_group(n: int, a: Obj, b: Obj) -> Obj:
    """``Ext^n(a, b)`` as homology of ``Hom(P, S^0(b))`` in degree ``-n``."""
    if a.instance is not b.instance:
        raise CategoryError("Ext between different instances")
    if n < 0:
        raise ValueError("Ext degree must be nonnegative")
    res = resolve_object(a)
    return homology(hom_complex(res.resolvent, sphere(0, b)).complex, -n).obj


# ---------------------------------------------------------------------------
# Long exact homology sequence
# ---------------------------------------------------------------------------

def induced_on_homology(g: ChainMap, n: int) -> Mor:
    zx, zy = cycles(g.src, n), cycles(g.dst, n)
    hx, hy = homology(g.src, n), homology(g.dst, n)
    on_cycles = factor_through(g[n] @ zx.mor, left=zy.mor)
    return factor_through(hy.mor @ on_cycles, right=hx.mor)


def connecting_map(i: ChainMap, p: ChainMap, n: int) -> Mor:
    """``δ: H_n C -> H_{n-1} A`` for a degreewise short exact ``A -> B -> C``."""
    a, bc, c = i.src, i.dst, p.dst
    zc, hc = cycles(c, n), homology(c, n)
    za, ha = cycles(a, n - 1), homology(a, n - 1)
    cover, u = projective_cover(zc.obj)
    up = factor_through(zc.mor @ u, left=p[n])
    down = factor_through(bc.d(n) @ up, left=i[n - 1])
    in_cycles = factor_through(down, left=za.mor)
    delta = factor_through(ha.mor @ in_cycles, right=hc.mor @ u)
    if delta is None:
        raise AssertionError("connecting map is not well defined")
    return delta


def is_exact_at(alpha: Mor, beta: Mor) -> bool:
    if not (beta @ alpha).is_zero():
        return False
    return factor_through(kernel(beta).mor, left=image(alpha).mor) is not None


def homology_les(i: ChainMap, p: ChainMap) -> list:
    """The sequence ``… H_n A -> H_n B -> H_n C -> H_{n-1} A …`` from the top
    degree down, as ``(object, map to the next object)`` pairs.  It starts
    and ends with zero homology so that both ends are checked too."""
    if not i.instance.is_abelian:
        raise CategoryError("the long exact sequence needs an abelian instance")
    a, b, c = i.src, i.dst, p.dst
    if p.src != b:
        raise CategoryError("maps are not composable")
    for n in b.degrees():
        if not is_short_exact(i[n], p[n]):
            raise CategoryError(f"not short exact in degree {n}")
    nz = [x for x in (a, b, c) if not x.is_zero()]
    if not nz:
        return []
    lo, hi = min(x.lo for x in nz), max(x.hi for x in nz)
    out = []
    for n in range(hi + 1, lo - 2, -1):
        out.append((homology(a, n).obj, induced_on_homology(i, n)))
        out.append((homology(b, n).obj, induced_on_homology(p, n)))
        out.append((homology(c, n).obj, connecting_map(i, p, n)))
    return out


def les_is_exact(seq: list) -> bool:
    maps = [m for _, m in seq]
    for alpha, beta in zip(maps, maps[1:]):
        if not is_exact_at(alpha, beta):
            return False
    return True
