"""Tensor products of objects, morphisms and complexes over ``VECTQ`` and
``FGAB``, pushout-products, and probe-based flatness and purity tests.

``FILTQ`` carries no tensor product here.  Summands of ``(X ⊗ Y)_n`` are
ordered by ascending ``i`` in ``X_i ⊗ Y_{n-i}``; the differential on
``X_i ⊗ Y_j`` is ``d ⊗ 1 + (-1)^i 1 ⊗ d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .chain import ChainMap, Complex, chain_cokernel, complex_sum, sphere
from .excat import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    Mor,
    Obj,
    ab,
    direct_sum,
    factor_through,
    is_admissible_mono,
    is_short_exact,
    present_orders,
    vect,
    zero_object,
)
from .exactlin import IntMatrix

DEFAULT_CYCLIC_PROBES = (2, 3, 4, 5, 6)


def _require_tensor(inst):
    if inst is FILTQ:
        raise CategoryError("no tensor product on filtered vector spaces")


def unit_object(instance) -> Obj:
    _require_tensor(instance)
    return vect(1) if instance is VECTQ else ab(1)


@lru_cache(maxsize=4096)
def _tensor_presentation(a: Obj, b: Obj):
    return present_orders([gcd(x, y) for x in a.orders for y in b.orders])


def tensor_objects(a: Obj, b: Obj) -> Obj:
    if a.instance is not b.instance:
        raise CategoryError("tensor across instances")
    _require_tensor(a.instance)
    if a.instance is VECTQ:
        return vect(a.size * b.size)
    return _tensor_presentation(a, b).obj


def tensor_mor(f: Mor, g: Mor) -> Mor:
    """``f ⊗ g``; on raw generators ``e_i ⊗ e_j`` this is the Kronecker product."""
    if f.instance is not g.instance:
        raise CategoryError("tensor across instances")
    _require_tensor(f.instance)
    raw = f.matrix.kron(g.matrix)
    if f.instance is VECTQ:
        return Mor(vect(f.src.size * g.src.size), vect(f.dst.size * g.dst.size), raw)
    ps, pd = _tensor_presentation(f.src, g.src), _tensor_presentation(f.dst, g.dst)
    return Mor(ps.obj, pd.obj, pd.to_norm @ raw @ ps.from_norm)


@dataclass(frozen=True)
class TensorWitness:
    factors: tuple
    product: Complex
    summands: dict     # degree -> list of (i, j) in block order
    sums: dict         # degree -> DirectSum of the blocks

    def block(self, n: int, i: int):
        """Injection and projection of the ``X_i ⊗ Y_{n-i}`` block."""
        k = self.summands[n].index((i, n - i))
        s = self.sums[n]
        return s.injections[k], s.projections[k]


def tensor_complexes(x: Complex, y: Complex) -> TensorWitness:
    if x.instance is not y.instance:
        raise CategoryError("tensor across instances")
    _require_tensor(x.instance)
    inst = x.instance
    summands, sums = {}, {}
    if not (x.is_zero() or y.is_zero()):
        for n in range(x.lo + y.lo, x.hi + y.hi + 1):
            pairs = [(i, n - i) for i in x.degrees() if y.lo <= n - i <= y.hi
                     and not x.obj(i).is_zero() and not y.obj(n - i).is_zero()]
            if pairs:
                summands[n] = pairs
                sums[n] = direct_sum(*[tensor_objects(x.obj(i), y.obj(j)) for i, j in pairs])
    diffs = {}
    for n, pairs in summands.items():
        if n - 1 not in summands:
            continue
        src, dst = sums[n], sums[n - 1]
        below = summands[n - 1]
        total = Mor.zero(src.obj, dst.obj)
        for k, (i, j) in enumerate(pairs):
            if (i - 1, j) in below:
                t = tensor_mor(x.d(i), Mor.identity(y.obj(j)))
                total = total + dst.injections[below.index((i - 1, j))] @ t @ src.projections[k]
            if (i, j - 1) in below:
                t = tensor_mor(Mor.identity(x.obj(i)), y.d(j))
                if i % 2:
                    t = -t
                total = total + dst.injections[below.index((i, j - 1))] @ t @ src.projections[k]
        diffs[n] = total
    prod = Complex(inst, {n: s.obj for n, s in sums.items()} or {0: zero_object(inst)}, diffs)
    return TensorWitness((x, y), prod, summands, sums)


def tensor_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    ts, td = tensor_complexes(f.src, g.src), tensor_complexes(f.dst, g.dst)
    comps = {}
    for n, pairs in ts.summands.items():
        if n not in td.summands:
            continue
        total = Mor.zero(ts.sums[n].obj, td.sums[n].obj)
        for k, (i, j) in enumerate(pairs):
            if (i, j) in td.summands[n]:
                t = tensor_mor(f[i], g[j])
                total = total + td.sums[n].injections[td.summands[n].index((i, j))] @ t @ ts.sums[n].projections[k]
        comps[n] = total
    return ChainMap(ts.product, td.product, comps)


@dataclass(frozen=True)
class PushoutProduct:
    box: ChainMap            # P -> B ⊗ B'
    pushout: Complex
    cokernel_map: ChainMap   # B ⊗ B' -> C ⊗ C'


def pushout_product_data(i: ChainMap, j: ChainMap) -> PushoutProduct:
    for m in (i, j):
        if not all(is_admissible_mono(m[n]) for n in m.degrees()):
            raise CategoryError("pushout-product needs degreewise admissible monics")
    a, b, a2, b2 = i.src, i.dst, j.src, j.dst
    one = ChainMap.identity
    s, inj, proj = complex_sum(tensor_complexes(a, b2).product, tensor_complexes(b, a2).product)
    phi = inj[0] @ tensor_chain_maps(one(a), j) - inj[1] @ tensor_chain_maps(i, one(a2))
    p, q = chain_cokernel(phi)
    psi = tensor_chain_maps(i, one(b2)) @ proj[0] + tensor_chain_maps(one(b), j) @ proj[1]
    bb = psi.dst
    comps = {}
    for n in p.degrees():
        comps[n] = factor_through(psi[n], right=q[n])
        if comps[n] is None:
            raise AssertionError("pushout-product map is not induced")
    box = ChainMap(p, bb, comps)
    _, c = chain_cokernel(i)
    _, c2 = chain_cokernel(j)
    cc = tensor_chain_maps(c, c2)
    for n in range(min(p.lo, bb.lo) if not bb.is_zero() else 0, bb.hi + 1):
        if not is_short_exact(box[n], cc[n]):
            raise AssertionError(f"pushout-product is not monic with cokernel C ⊗ C' in degree {n}")
    return PushoutProduct(box, p, cc)


def pushout_product(i: ChainMap, j: ChainMap) -> ChainMap:
    """``i □ j: A ⊗ B' ⊔_{A ⊗ A'} B ⊗ A' -> B ⊗ B'``, verified to be an
    admissible monic with cokernel ``C ⊗ C'``."""
    return pushout_product_data(i, j).box


def default_ses_probes(instance) -> list:
    _require_tensor(instance)
    if instance is VECTQ:
        q, q2 = vect(1), vect(2)
        return [(Mor(q, q2, q.instance.matrix_type.from_rows([[1], [0]])),
                 Mor(q2, q, q.instance.matrix_type.from_rows([[0, 1]])))]
    z = ab(1)
    out = []
    for d in DEFAULT_CYCLIC_PROBES:
        zd = ab(0, [d])
        out.append((Mor(z, z, IntMatrix.from_rows([[d]])), Mor(z, zd, IntMatrix.from_rows([[1]]))))
    return out


def default_object_probes(instance) -> list:
    _require_tensor(instance)
    if instance is VECTQ:
        return [vect(1)]
    return [ab(1)] + [ab(0, [d]) for d in DEFAULT_CYCLIC_PROBES]


def is_flat_probe(f: Obj, probes: Optional[Sequence] = None) -> bool:
    """``f ⊗ -`` keeps every probe short exact sequence exact."""
    probes = default_ses_probes(f.instance) if probes is None else probes
    one = Mor.identity(f)
    return all(is_short_exact(tensor_mor(one, m), tensor_mor(one, e)) for m, e in probes)


def is_pure_probe(i, probes: Optional[Sequence] = None) -> bool:
    """``i ⊗ P`` stays an admissible monic for every probe ``P``."""
    probes = default_object_probes(i.instance) if probes is None else probes
    if isinstance(i, ChainMap):
        return all(is_pure_probe(i[n], probes) for n in i.degrees())
    return all(is_admissible_mono(tensor_mor(i, Mor.identity(p))) for p in probes)


def unit_complex(instance) -> Complex:
    return sphere(0, unit_object(instance))
