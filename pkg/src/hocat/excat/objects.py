"""Objects and morphisms of the three computable exact categories.

* ``VECTQ`` -- finite dimensional rational vector spaces ``Q^n``.
* ``FILTQ`` -- pairs ``(V, W)`` with ``W`` a subspace of ``V = Q^n``; the
  morphisms are the linear maps with ``f(W) ⊆ W'``.  This category is
  quasi-abelian but not abelian.
* ``FGAB`` -- finitely generated abelian groups ``Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t``
  in invariant-factor form ``d_1 | d_2 | ...``.

Every object has a list of coordinates (its *size*); a morphism is a
``size(dst) x size(src)`` matrix.  For ``FGAB`` the coordinates are the free
generators followed by the torsion generators and entries in a ``Z/e`` row
are kept reduced into ``[0, e)``, so equality of morphisms is equality of
matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from ..exactlin import (
    IntMatrix,
    Matrix,
    RatMatrix,
    column_space_basis,
    int_kernel_basis,
    rank,
    smith_normal_form,
)


class InstanceId(enum.Enum):
    VECTQ = "VECTQ"
    FILTQ = "FILTQ"
    FGAB = "FGAB"

    @property
    def is_abelian(self) -> bool:
        return self is not InstanceId.FILTQ

    @property
    def matrix_type(self):
        return IntMatrix if self is InstanceId.FGAB else RatMatrix


VECTQ = InstanceId.VECTQ
FILTQ = InstanceId.FILTQ
FGAB = InstanceId.FGAB


class CategoryError(ValueError):
    """Raised when data violates the invariants of an instance."""


@dataclass(frozen=True)
class Obj:
    instance: InstanceId
    dim: int = 0
    subspace: Optional[RatMatrix] = None
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        inst = self.instance
        if inst is FGAB:
            if self.free_rank < 0:
                raise CategoryError("negative free rank")
            tor = tuple(int(d) for d in self.torsion)
            object.__setattr__(self, "torsion", tor)
            if any(d < 2 for d in tor):
                raise CategoryError(f"torsion orders must be >= 2, got {list(tor)}")
            for a, b in zip(tor, tor[1:]):
                if b % a:
                    raise CategoryError(f"torsion {list(tor)} violates the divisibility chain")
            return
        if self.dim < 0:
            raise CategoryError("negative dimension")
        if inst is VECTQ:
            return
        w = self.subspace
        if w is None:
            w = RatMatrix.zeros(self.dim, 0)
        w = w if isinstance(w, RatMatrix) else RatMatrix(w.rows, w.cols, w.data)
        if w.rows != self.dim:
            raise CategoryError(f"subspace basis has {w.rows} rows, expected {self.dim}")
        object.__setattr__(self, "subspace", _canonical_subspace(w))

    @property
    def size(self) -> int:
        if self.instance is FGAB:
            return self.free_rank + len(self.torsion)
        return self.dim

    @property
    def orders(self) -> tuple:
        """Order of each coordinate generator; 0 means infinite (free)."""
        if self.instance is FGAB:
            return (0,) * self.free_rank + self.torsion
        return (0,) * self.dim

    @property
    def sub_dim(self) -> int:
        return self.subspace.cols if self.instance is FILTQ else 0

    def is_zero(self) -> bool:
        return self.size == 0

    def __repr__(self):
        return f"Obj<{self.instance.value} {self}>"

    def __str__(self):
        if self.instance is VECTQ:
            return f"Q^{self.dim}"
        if self.instance is FILTQ:
            return f"(Q^{self.dim}, W dim {self.sub_dim})"
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) or "0"


@lru_cache(maxsize=8192)
def _canonical_subspace(w: RatMatrix) -> RatMatrix:
    if rank(w) != w.cols:
        raise CategoryError("subspace basis columns are not independent")
    return column_space_basis(w)


def vect(n: int) -> Obj:
    return Obj(VECTQ, dim=n)


def filt(n: int, subspace=None) -> Obj:
    """Filtered space ``(Q^n, W)``; ``subspace`` is a matrix or list of basis
    column vectors."""
    if subspace is None:
        w = RatMatrix.zeros(n, 0)
    elif isinstance(subspace, Matrix):
        w = subspace
    else:
        w = RatMatrix.from_columns([list(c) for c in subspace], n)
    return Obj(FILTQ, dim=n, subspace=w)


def ab(free_rank: int = 0, torsion: Sequence[int] = ()) -> Obj:
    return Obj(FGAB, free_rank=free_rank, torsion=tuple(torsion))


@lru_cache(maxsize=None)
def zero_object(instance: InstanceId) -> Obj:
    return Obj(instance)


def _reduce_rows(m: IntMatrix, orders: Sequence[int]) -> IntMatrix:
    if not any(orders):
        return m
    return IntMatrix(m.rows, m.cols, [[x % o for x in r] if o else r for r, o in zip(m.data, orders)])


@dataclass(frozen=True)
class Mor:
    src: Obj
    dst: Obj
    matrix: Matrix = field(compare=True)

    def __post_init__(self):
        src, dst = self.src, self.dst
        if src.instance is not dst.instance:
            raise CategoryError("morphism between different instances")
        inst = src.instance
        m = self.matrix
        if m.shape != (dst.size, src.size):
            raise CategoryError(f"matrix shape {m.shape} does not match {dst.size}x{src.size}")
        if inst is FGAB:
            m = _reduce_rows(m if isinstance(m, IntMatrix) else IntMatrix(m.rows, m.cols, m.data), dst.orders)
            for j, d in enumerate(src.orders):
                if not d:
                    continue
                for i, e in enumerate(dst.orders):
                    x = m.data[i][j]
                    if e == 0 and x:
                        raise CategoryError("torsion generator mapped to a free coordinate")
                    if e and (x * d) % e:
                        raise CategoryError(f"Z/{d} generator cannot map to {x} in Z/{e}")
        else:
            if not isinstance(m, RatMatrix):
                m = RatMatrix(m.rows, m.cols, m.data)
            if inst is FILTQ and src.sub_dim:
                img = m @ src.subspace
                if dst.sub_dim == 0:
                    if not img.is_zero():
                        raise CategoryError("filtered morphism does not preserve the subspace")
                elif rank(dst.subspace.hstack(img)) != dst.sub_dim:
                    raise CategoryError("filtered morphism does not preserve the subspace")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def _trusted(cls, src: Obj, dst: Obj, m: Matrix) -> "Mor":
        """Build without validation; only for results of composition and
        linear combination of valid morphisms, which stay valid."""
        if src.instance is FGAB:
            m = _reduce_rows(m, dst.orders)
        out = object.__new__(cls)
        object.__setattr__(out, "src", src)
        object.__setattr__(out, "dst", dst)
        object.__setattr__(out, "matrix", m)
        return out

    @property
    def instance(self) -> InstanceId:
        return self.src.instance

    @classmethod
    def zero(cls, src: Obj, dst: Obj) -> "Mor":
        return cls(src, dst, src.instance.matrix_type.zeros(dst.size, src.size))

    @classmethod
    def identity(cls, x: Obj) -> "Mor":
        return cls(x, x, x.instance.matrix_type.identity(x.size))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __add__(self, other: "Mor") -> "Mor":
        if (self.src, self.dst) != (other.src, other.dst):
            raise CategoryError("adding morphisms with different endpoints")
        return Mor._trusted(self.src, self.dst, self.matrix + other.matrix)

    def __sub__(self, other: "Mor") -> "Mor":
        return self + (-other)

    def __neg__(self) -> "Mor":
        return Mor._trusted(self.src, self.dst, -self.matrix)

    def scale(self, c) -> "Mor":
        if self.instance is FGAB and int(c) != c:
            raise CategoryError("FGAB morphisms can only be scaled by integers")
        return Mor._trusted(self.src, self.dst, self.matrix.scale(c))


def compose(g: Mor, f: Mor) -> Mor:
    """``g ∘ f``."""
    if f.dst != g.src:
        raise CategoryError(f"cannot compose: {f.dst} != {g.src}")
    return Mor._trusted(f.src, g.dst, g.matrix @ f.matrix)


# ---------------------------------------------------------------------------
# FGAB presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """Normal form of ``Z^k / im(relations)``.

    ``to_norm`` (size x k) maps old coordinates to normal coordinates and
    ``from_norm`` (k x size) maps normal coordinates back; both are group
    homomorphisms and mutually inverse on the quotient.
    """

    obj: Obj
    to_norm: IntMatrix
    from_norm: IntMatrix


def present(k: int, relations: IntMatrix) -> Presentation:
    if relations.rows != k:
        raise ValueError("relations must have one row per generator")
    return _present_cached(k, relations)


@lru_cache(maxsize=4096)
def _present_cached(k: int, relations: IntMatrix) -> Presentation:
    snf = smith_normal_form(relations, track_inverse=True)
    diag = snf.diagonal + [0] * (k - len(snf.diagonal))
    free = [i for i in range(k) if diag[i] == 0]
    tors = [i for i in range(k) if diag[i] >= 2]
    keep = free + tors
    uinv = snf.U_inv
    obj = ab(len(free), [diag[i] for i in tors])
    to_norm = _reduce_rows(snf.U.select_rows(keep), obj.orders)
    from_norm = uinv.select_cols(keep)
    return Presentation(obj, to_norm, from_norm)


@lru_cache(maxsize=4096)
def _present_orders_cached(orders: tuple) -> Presentation:
    return _present_orders(orders)


def present_orders(orders: Sequence[int]) -> Presentation:
    return _present_orders_cached(tuple(orders))


def _present_orders(orders: Sequence[int]) -> Presentation:
    """Normal form of ``⊕ Z/o_i`` (``o_i = 0`` is ``Z``, ``o_i = 1`` is trivial)."""
    orders = tuple(orders)
    k = len(orders)
    free = [o for o in orders if o == 0]
    tors = [o for o in orders if o != 0]
    if orders == tuple(free + tors) and all(o >= 2 for o in tors) and all(
            b % a == 0 for a, b in zip(tors, tors[1:])):
        eye = IntMatrix.identity(k)
        return Presentation(ab(len(free), tors), eye, eye)
    cols = [[o if i == j else 0 for i in range(k)] for j, o in enumerate(orders) if o]
    return present(k, IntMatrix.from_columns(cols, k) if cols else IntMatrix.zeros(k, 0))


# ---------------------------------------------------------------------------
# Direct sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    obj: Obj
    injections: tuple
    projections: tuple

    def __iter__(self):
        return iter((self.obj, self.injections, self.projections))


def direct_sum(*objs: Obj) -> DirectSum:
    """Biproduct of the given objects with its injections and projections."""
    if not objs:
        raise ValueError("direct_sum needs at least one object")
    inst = objs[0].instance
    if any(o.instance is not inst for o in objs):
        raise CategoryError("direct sum across instances")
    sizes = [o.size for o in objs]
    total = sum(sizes)
    mt = inst.matrix_type
    raw_inj, raw_proj = [], []
    start = 0
    for s in sizes:
        raw_inj.append(mt(total, s, [[int(i == j + start) for j in range(s)] for i in range(total)]))
        raw_proj.append(mt(s, total, [[int(j == i + start) for j in range(total)] for i in range(s)]))
        start += s
    if inst is VECTQ:
        obj = vect(total)
        to_norm = from_norm = None
    elif inst is FILTQ:
        obj = filt(total, Matrix.block_diag([o.subspace for o in objs], RatMatrix))
        to_norm = from_norm = None
    else:
        pres = present_orders(sum((o.orders for o in objs), ()))
        obj, to_norm, from_norm = pres.obj, pres.to_norm, pres.from_norm
    inj, proj = [], []
    for o, i, p in zip(objs, raw_inj, raw_proj):
        if to_norm is not None:
            i, p = to_norm @ i, p @ from_norm
        inj.append(Mor(o, obj, i))
        proj.append(Mor(obj, o, p))
    return DirectSum(obj, tuple(inj), tuple(proj))


def block_mor(blocks: Sequence[Sequence[Mor]], srcs: Sequence[Obj], dsts: Sequence[Obj],
              src_sum: Optional[DirectSum] = None, dst_sum: Optional[DirectSum] = None) -> Mor:
    """Morphism ``⊕ srcs -> ⊕ dsts`` from a block matrix of morphisms
    (``blocks[row][col]: srcs[col] -> dsts[row]``; ``None`` is zero)."""
    src_sum = src_sum or direct_sum(*srcs)
    dst_sum = dst_sum or direct_sum(*dsts)
    total = Mor.zero(src_sum.obj, dst_sum.obj)
    for r, row in enumerate(blocks):
        for c, b in enumerate(row):
            if b is None or b.is_zero():
                continue
            total = total + dst_sum.injections[r] @ b @ src_sum.projections[c]
    return total
