"""Hom objects and linear systems in unknown morphisms.

``HomSpace(a, b)`` realizes ``Hom(a, b)`` as an object of an abelian
instance (``VECTQ`` for the two rational instances, ``FGAB`` for ``FGAB``)
together with a coordinate system: ``element`` turns coordinates into a
:class:`Mor`, ``coordinates`` goes back.

``LinearSystem`` collects equations of the form ``Σ c·L∘X_k∘R = rhs`` in
unknown morphisms ``X_k`` and solves them exactly, over Q or, for ``FGAB``,
over Z modulo the torsion orders of the target rows.  Nearly every
existence question in the library (lifts, homotopies, factorizations
through kernels) is phrased this way.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from ..exactlin import IntMatrix, RatMatrix, inverse, nullspace_basis, rref, solve_int_linear, solve_linear
from .objects import FGAB, FILTQ, VECTQ, CategoryError, Mor, Obj, present_orders, vect


class HomSpace:
    """``Hom(a, b)`` as a computable object with explicit coordinates."""

    def __init__(self, a: Obj, b: Obj):
        if a.instance is not b.instance:
            raise CategoryError("Hom between different instances")
        self.src, self.dst = a, b
        self._coord_solver = None
        inst = a.instance
        m, n = b.size, a.size
        if inst is VECTQ:
            self.basis = [(i, j, Fraction(1)) for i in range(m) for j in range(n)]
            self.obj = vect(len(self.basis))
            self._general = None
        elif inst is FILTQ:
            self.basis = None
            self._general = _filtered_hom_basis(a, b)
            self.obj = vect(len(self._general))
        else:
            gens, orders = [], []
            for i, e in enumerate(b.orders):
                for j, d in enumerate(a.orders):
                    if d == 0:
                        gens.append((i, j, 1))
                        orders.append(e)
                    elif e:
                        g = gcd(d, e)
                        if g > 1:
                            gens.append((i, j, e // g))
                            orders.append(g)
            self.basis = gens
            self._general = None
            self._pres = present_orders(orders)
            self.obj = self._pres.obj

    # -- raw generators ----------------------------------------------------
    def generator_matrices(self) -> list:
        """Spanning matrices, one per raw generator."""
        inst = self.src.instance
        m, n = self.dst.size, self.src.size
        if self._general is not None:
            return list(self._general)
        mt = inst.matrix_type
        out = []
        for i, j, v in self.basis:
            rows = [[0] * n for _ in range(m)]
            rows[i][j] = v
            out.append(mt(m, n, rows))
        return out

    # -- coordinates -------------------------------------------------------
    def _sparse(self, m) -> list:
        """Rows of ``m`` as ``(column, entry)`` lists, cached per matrix."""
        cache = self.__dict__.setdefault("_sparse_rows", {})
        key = id(m)
        if key not in cache:
            cache[key] = (m, [[(t, x) for t, x in enumerate(row) if x] for row in m.data])
        return cache[key][1]

    def element(self, coords: Sequence) -> Mor:
        inst = self.src.instance
        m, n = self.dst.size, self.src.size
        if len(coords) != self.obj.size:
            raise ValueError("wrong number of coordinates")
        if inst is FGAB:
            raw = [sum(x * int(coords[t]) for t, x in row) for row in self._sparse(self._pres.from_norm)]
            rows = [[0] * n for _ in range(m)]
            for (i, j, v), c in zip(self.basis, raw):
                rows[i][j] += v * c
            return Mor(self.src, self.dst, IntMatrix(m, n, rows))
        if inst is VECTQ:
            rows = [[Fraction(0)] * n for _ in range(m)]
            for (i, j, _), c in zip(self.basis, coords):
                rows[i][j] = Fraction(c)
            return Mor(self.src, self.dst, RatMatrix(m, n, rows))
        total = RatMatrix.zeros(m, n)
        for g, c in zip(self._general, coords):
            if c:
                total = total + g.scale(Fraction(c))
        return Mor(self.src, self.dst, total)

    def coordinates(self, f: Mor) -> list:
        if (f.src, f.dst) != (self.src, self.dst):
            raise CategoryError("morphism does not belong to this Hom space")
        inst = self.src.instance
        if inst is VECTQ:
            return [f.matrix.data[i][j] for i, j, _ in self.basis]
        if inst is FGAB:
            raw = []
            for i, j, v in self.basis:
                x = f.matrix.data[i][j]
                raw.append(x // v)
            out = [sum(x * raw[k] for k, x in row) for row in self._sparse(self._pres.to_norm)]
            return [x % o if o else x for x, o in zip(out, self.obj.orders)]
        if not self._general:
            return []
        if self._coord_solver is None:
            flat = RatMatrix.from_columns([_flatten(g) for g in self._general], self.dst.size * self.src.size)
            _, pivots = rref(flat.transpose())
            self._coord_solver = (pivots, inverse(flat.select_rows(pivots)))
        pivots, inv = self._coord_solver
        v = _flatten(f.matrix)
        return [sum(a * v[p] for a, p in zip(row, pivots)) for row in inv.data]


def _flatten(m) -> list:
    return [x for r in m.data for x in r]


def _filtered_hom_basis(a: Obj, b: Obj) -> list:
    """Basis of {M : M W_a ⊆ W_b}."""
    m, n = b.size, a.size
    if m * n == 0:
        return []
    wa = a.subspace
    if wa.cols == 0 or b.sub_dim == m:
        return [RatMatrix(m, n, [[int(i == r and j == c) for j in range(n)] for i in range(m)])
                for r in range(m) for c in range(n)]
    ann = nullspace_basis(b.subspace.transpose()).transpose()  # rows annihilate W_b
    # constraint: ann @ M @ wa = 0, linear in the row-major entries of M
    rows = []
    for p in range(ann.rows):
        for q in range(wa.cols):
            rows.append([ann.data[p][i] * wa.data[j][q] for i in range(m) for j in range(n)])
    null = nullspace_basis(RatMatrix(len(rows), m * n, rows))
    out = []
    for k in range(null.cols):
        v = null.column(k)
        out.append(RatMatrix(m, n, [v[i * n:(i + 1) * n] for i in range(m)]))
    return out


@lru_cache(maxsize=8192)
def hom_space(a: Obj, b: Obj) -> HomSpace:
    return HomSpace(a, b)


def hom_group(a: Obj, b: Obj) -> Obj:
    """``Hom(a, b)`` as an object (``VECTQ`` for rational instances)."""
    return hom_space(a, b).obj


def hom_post(g: Obj, f: Mor) -> Mor:
    """``Hom(g, f): Hom(g, src f) -> Hom(g, dst f)``, ``h ↦ f∘h``."""
    hs, ht = hom_space(g, f.src), hom_space(g, f.dst)
    return _hom_map(hs, ht, lambda h: f @ h)


def hom_pre(f: Mor, z: Obj) -> Mor:
    """``Hom(f, z): Hom(dst f, z) -> Hom(src f, z)``, ``h ↦ h∘f``."""
    hs, ht = hom_space(f.dst, z), hom_space(f.src, z)
    return _hom_map(hs, ht, lambda h: h @ f)


def _hom_map(hs: HomSpace, ht: HomSpace, fn) -> Mor:
    n = hs.obj.size
    cols = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        cols.append(ht.coordinates(fn(hs.element(e))))
    mt = hs.obj.instance.matrix_type
    return Mor(hs.obj, ht.obj, mt.from_columns(cols, ht.obj.size) if cols else mt.zeros(ht.obj.size, 0))


class LinearSystem:
    """Equations ``Σ coef · left ∘ X_k ∘ right = rhs`` in unknown morphisms."""

    def __init__(self, instance):
        self.instance = instance
        self.unknowns = []   # (src, dst, generator matrices)
        self.equations = []  # (src, dst, terms, rhs)

    def unknown(self, src: Obj, dst: Obj) -> int:
        h = hom_space(src, dst)
        # single-entry generators are kept as (i, j, v) triples: much cheaper
        gens = h.basis if h._general is None else h.generator_matrices()
        self.unknowns.append((src, dst, gens))
        return len(self.unknowns) - 1

    def equation(self, terms, rhs: Optional[Mor] = None, src: Optional[Obj] = None, dst: Optional[Obj] = None):
        """``terms`` is a list of ``(coef, left, k, right)``; ``left``/``right``
        may be ``None`` for identities.  ``src``/``dst`` are needed only when
        ``rhs`` is ``None`` (zero right-hand side)."""
        if rhs is not None:
            src, dst = rhs.src, rhs.dst
        if src is None or dst is None:
            raise ValueError("equation endpoints are unknown")
        for coef, left, k, right in terms:
            usrc, udst, _ = self.unknowns[k]
            if (right.dst if right is not None else src) != usrc or (left.src if left is not None else dst) != udst:
                raise CategoryError("equation term has mismatched endpoints")
            if (right.src if right is not None else usrc) != src or (left.dst if left is not None else udst) != dst:
                raise CategoryError("equation term has mismatched endpoints")
        self.equations.append((src, dst, list(terms), rhs))

    def solve(self) -> Optional[list]:
        offsets, total = [], 0
        for _, _, gens in self.unknowns:
            offsets.append(total)
            total += len(gens)
        rows, rhs_rows, moduli = [], [], []
        for src, dst, terms, rhs in self.equations:
            m, n = dst.size, src.size
            if m * n == 0:
                continue
            block = [[0] * total for _ in range(m * n)]
            for coef, left, k, right in terms:
                for g_idx, g in enumerate(self.unknowns[k][2]):
                    col = offsets[k] + g_idx
                    if isinstance(g, tuple):
                        i, j, v = g
                        lcol = [(i, 1)] if left is None else [(r, row[i]) for r, row in enumerate(left.matrix.data) if row[i]]
                        rrow = [(j, 1)] if right is None else [(c, x) for c, x in enumerate(right.matrix.data[j]) if x]
                        for r, a in lcol:
                            for c, b in rrow:
                                block[r * n + c][col] += coef * v * a * b
                        continue
                    img = g
                    if right is not None:
                        img = img @ right.matrix
                    if left is not None:
                        img = left.matrix @ img
                    for r, x in enumerate(_flatten(img)):
                        if x:
                            block[r][col] += coef * x
            rows.extend(block)
            target = _flatten(rhs.matrix) if rhs is not None else [0] * (m * n)
            rhs_rows.extend([v] for v in target)
            moduli.extend(o for o in dst.orders for _ in range(n))
        if self.instance is FGAB:
            a = IntMatrix._trusted(len(rows), total, rows)
            b = IntMatrix(len(rows), 1, rhs_rows)
            sol = solve_int_linear(a, b, moduli)
        else:
            a = RatMatrix(len(rows), total, rows)
            b = RatMatrix(len(rows), 1, rhs_rows)
            sol = solve_linear(a, b)
        if sol is None:
            return None
        coeffs = [sol.data[i][0] for i in range(total)]
        out = []
        for (usrc, udst, gens), off in zip(self.unknowns, offsets):
            mt = usrc.instance.matrix_type
            if gens and isinstance(gens[0], tuple):
                rows = [[0] * usrc.size for _ in range(udst.size)]
                for g_idx, (i, j, v) in enumerate(gens):
                    rows[i][j] += coeffs[off + g_idx] * v
                acc = mt(udst.size, usrc.size, rows)
            else:
                acc = mt.zeros(udst.size, usrc.size)
                for g_idx, g in enumerate(gens):
                    c = coeffs[off + g_idx]
                    if c:
                        acc = acc + g.scale(c)
            out.append(Mor(usrc, udst, acc))
        return out


def solve_for(instance, unknown_shape, build) -> Optional[Mor]:
    """Convenience for one unknown: ``build(system, k)`` adds equations."""
    sys_ = LinearSystem(instance)
    k = sys_.unknown(*unknown_shape)
    build(sys_, k)
    sol = sys_.solve()
    return None if sol is None else sol[0]


def factor_through(target: Mor, left: Optional[Mor] = None, right: Optional[Mor] = None) -> Optional[Mor]:
    """Some ``X`` with ``left ∘ X ∘ right = target`` or ``None``."""
    src = right.dst if right is not None else target.src
    dst = left.src if left is not None else target.dst
    return solve_for(target.instance, (src, dst),
                     lambda s, k: s.equation([(1, left, k, right)], target))
