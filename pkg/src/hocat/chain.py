"""Chain complexes over an instance.

Differentials are homological: ``d_n: X_n -> X_{n-1}``.  Complexes have
finite support; every degree outside ``[lo, hi]`` holds the zero object.

Conventions (kept fixed throughout the package):

* shift: ``(X[k])_i = X_{i+k}`` and ``d^{X[k]}_i = (-1)^k d_{i+k}``;
* cone: ``cone(f)_n = X_{n-1} ⊕ Y_n`` with differential
  ``[[-d^X, 0], [-f, d^Y]]``;
* Hom complex: ``Hom(X, Y)_n = ⊕_i Hom(X_i, Y_{i+n})`` with
  ``(df)_i = d^Y ∘ f_i - (-1)^n f_{i-1} ∘ d^X_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from .excat import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    InstanceId,
    LinearSystem,
    Mor,
    Obj,
    ab,
    cokernel,
    direct_sum,
    factor_through,
    generator_family,
    hom_space,
    is_admissible_epi,
    is_admissible_mono,
    is_projective,
    kernel,
    vect,
    zero_object,
)
from .exactlin import IntMatrix, RatMatrix, int_kernel_basis, rank, solve_int_linear


class Complex:
    """Finitely supported chain complex; validated on construction."""

    __slots__ = ("instance", "lo", "hi", "_objects", "_diffs")

    def __init__(self, instance: InstanceId, objects: Dict[int, Obj], diffs: Optional[Dict[int, Mor]] = None,
                 check: bool = True):
        self.instance = instance
        objs = {n: o for n, o in objects.items() if not o.is_zero()}
        for o in objs.values():
            if o.instance is not instance:
                raise CategoryError("complex entry from another instance")
        if objs:
            self.lo, self.hi = min(objs), max(objs)
        else:
            self.lo, self.hi = 0, -1
        self._objects = objs
        ds = {}
        for n, d in (diffs or {}).items():
            if d.src != self.obj(n) or d.dst != self.obj(n - 1):
                raise CategoryError(f"differential d_{n} has wrong endpoints")
            if not d.is_zero():
                ds[n] = d
        self._diffs = ds
        if check:
            for n in ds:
                if n - 1 in ds and not (ds[n - 1] @ ds[n]).is_zero():
                    raise CategoryError(f"d_{n - 1} ∘ d_{n} != 0")

    def obj(self, n: int) -> Obj:
        return self._objects.get(n) or zero_object(self.instance)

    def d(self, n: int) -> Mor:
        got = self._diffs.get(n)
        if got is not None:
            return got
        return Mor.zero(self.obj(n), self.obj(n - 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def objects(self) -> dict:
        return dict(self._objects)

    @property
    def diffs(self) -> dict:
        return dict(self._diffs)

    def is_zero(self) -> bool:
        return not self._objects

    def total_size(self) -> int:
        return sum(o.size for o in self._objects.values())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.instance is other.instance and self._objects == other._objects
                and self._diffs == other._diffs)

    def __hash__(self):
        return hash((self.instance, tuple(sorted(self._objects.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        parts = [f"{n}:{self.obj(n)}" for n in self.degrees()]
        return f"Complex<{self.instance.value} " + ", ".join(parts) + ">"


def _range_union(*cs: Complex) -> range:
    nz = [c for c in cs if not c.is_zero()]
    if not nz:
        return range(0)
    return range(min(c.lo for c in nz), max(c.hi for c in nz) + 1)


class ChainMap:
    """A degreewise family of morphisms commuting with the differentials."""

    __slots__ = ("src", "dst", "_components")

    def __init__(self, src: Complex, dst: Complex, components: Dict[int, Mor], check: bool = True):
        if src.instance is not dst.instance:
            raise CategoryError("chain map between instances")
        self.src, self.dst = src, dst
        comps = {}
        for n, f in components.items():
            if f.src != src.obj(n) or f.dst != dst.obj(n):
                raise CategoryError(f"component {n} has wrong endpoints")
            if not f.is_zero():
                comps[n] = f
        self._components = comps
        if check:
            for n in range(min(src.lo, dst.lo), max(src.hi, dst.hi) + 2):
                if (self[n - 1] @ src.d(n)) != (dst.d(n) @ self[n]):
                    raise CategoryError(f"chain map does not commute in degree {n}")

    @property
    def instance(self):
        return self.src.instance

    def __getitem__(self, n: int) -> Mor:
        got = self._components.get(n)
        if got is not None:
            return got
        return Mor.zero(self.src.obj(n), self.dst.obj(n))

    @property
    def components(self) -> dict:
        return dict(self._components)

    def degrees(self) -> range:
        return _range_union(self.src, self.dst)

    def is_zero(self) -> bool:
        return not self._components

    @classmethod
    def identity(cls, x: Complex) -> "ChainMap":
        return cls(x, x, {n: Mor.identity(x.obj(n)) for n in x.degrees()}, check=False)

    @classmethod
    def zero(cls, x: Complex, y: Complex) -> "ChainMap":
        return cls(x, y, {}, check=False)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        if other.dst != self.src:
            raise CategoryError("cannot compose chain maps")
        rng = _range_union(other.src, self.dst)
        return ChainMap(other.src, self.dst, {n: self[n] @ other[n] for n in rng}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if (self.src, self.dst) != (other.src, other.dst):
            raise CategoryError("adding chain maps with different endpoints")
        return ChainMap(self.src, self.dst, {n: self[n] + other[n] for n in self.degrees()}, check=False)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.src, self.dst, {n: -self[n] for n in self.degrees()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self._components == other._components

    def __hash__(self):
        return hash((self.src, self.dst))

    def __repr__(self):
        return f"ChainMap<{self.src!r} -> {self.dst!r}>"


@dataclass(frozen=True)
class Homotopy:
    """``f_i - g_i = D_{i-1} ∘ d_i + d_{i+1} ∘ D_i`` with ``D_i: X_i -> Y_{i+1}``."""

    f: ChainMap
    g: ChainMap
    components: dict

    def __getitem__(self, i):
        got = self.components.get(i)
        if got is not None:
            return got
        return Mor.zero(self.f.src.obj(i), self.f.dst.obj(i + 1))

    def verify(self) -> bool:
        x, y = self.f.src, self.f.dst
        for i in _range_union(x, y):
            lhs = self.f[i] - self.g[i]
            rhs = self[i - 1] @ x.d(i) + y.d(i + 1) @ self[i]
            if lhs != rhs:
                return False
        return True


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def sphere(n: int, e: Obj) -> Complex:
    return Complex(e.instance, {n: e})


def disk(n: int, e: Obj) -> Complex:
    return Complex(e.instance, {n: e, n - 1: e}, {n: Mor.identity(e)})


def zero_complex(instance: InstanceId) -> Complex:
    return Complex(instance, {})


def shift(x: Complex, k: int) -> Complex:
    sign = -1 if k % 2 else 1
    objs = {n - k: o for n, o in x.objects.items()}
    diffs = {n - k: x.d(n).scale(sign) for n in x.diffs}
    return Complex(x.instance, objs, diffs, check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.src, k), shift(f.dst, k), {n - k: m for n, m in f.components.items()}, check=False)


def complex_sum(*xs: Complex):
    """Direct sum of complexes with injection and projection chain maps."""
    inst = xs[0].instance
    rng = _range_union(*xs)
    sums = {n: direct_sum(*[x.obj(n) for x in xs]) for n in range(rng.start - 1, rng.stop)} if rng else {}
    objs = {n: s.obj for n, s in sums.items()}
    diffs = {}
    for n in rng:
        total = Mor.zero(objs[n], objs[n - 1])
        for k, x in enumerate(xs):
            total = total + sums[n - 1].injections[k] @ x.d(n) @ sums[n].projections[k]
        diffs[n] = total
    s = Complex(inst, objs, diffs, check=False)
    inj = [ChainMap(x, s, {n: sums[n].injections[k] for n in rng}, check=False) for k, x in enumerate(xs)]
    proj = [ChainMap(s, x, {n: sums[n].projections[k] for n in rng}, check=False) for k, x in enumerate(xs)]
    return s, inj, proj


@dataclass(frozen=True)
class Cone:
    complex: Complex
    tau: ChainMap   # Y -> cone(f)
    pi: ChainMap    # cone(f) -> X[-1]

    def __iter__(self):
        return iter((self.complex, self.tau, self.pi))


def cone(f: ChainMap) -> Cone:
    x, y = f.src, f.dst
    rng = range(min(x.lo + 1, y.lo) if not x.is_zero() else y.lo,
                max(x.hi + 1, y.hi) + 1) if not (x.is_zero() and y.is_zero()) else range(0)
    sums = {n: direct_sum(x.obj(n - 1), y.obj(n)) for n in range(rng.start - 1, rng.stop)} if rng else {}
    objs = {n: s.obj for n, s in sums.items()}
    diffs = {}
    for n in rng:
        src, dst = sums[n], sums[n - 1]
        ix, iy = dst.injections
        px, py = src.projections
        diffs[n] = (ix @ (-x.d(n - 1)) @ px) + (iy @ (-f[n - 1]) @ px) + (iy @ y.d(n) @ py)
    c = Complex(f.instance, objs, diffs, check=True)
    xm = shift(x, -1)
    tau = ChainMap(y, c, {n: sums[n].injections[1] for n in rng}, check=False)
    pi = ChainMap(c, xm, {n: sums[n].projections[0] for n in rng}, check=False)
    return Cone(c, tau, pi)


def chain_kernel(f: ChainMap):
    """Degreewise kernel with the induced differential and its inclusion."""
    incs = {n: kernel(f[n]).mor for n in f.degrees()}
    x = f.src
    objs = {n: k.src for n, k in incs.items()}
    diffs = {}
    for n in f.degrees():
        if n - 1 in incs:
            diffs[n] = factor_through(x.d(n) @ incs[n], left=incs[n - 1])
    k = Complex(f.instance, objs, diffs)
    return k, ChainMap(k, x, {n: m for n, m in incs.items() if not m.src.is_zero()})


def chain_cokernel(f: ChainMap):
    """Degreewise cokernel with the induced differential and its projection."""
    projs = {n: cokernel(f[n]).mor for n in f.degrees()}
    y = f.dst
    objs = {n: c.dst for n, c in projs.items()}
    diffs = {}
    for n in f.degrees():
        if n - 1 in projs:
            diffs[n] = factor_through(projs[n - 1] @ y.d(n), right=projs[n])
    c = Complex(f.instance, objs, diffs)
    return c, ChainMap(y, c, {n: m for n, m in projs.items() if not m.dst.is_zero()})


def truncate(x: Complex, n: int):
    """``τ_{≥n} x`` together with its inclusion into ``x``."""
    objs, diffs, comps = {}, {}, {}
    zk = kernel(x.d(n))
    for m in x.degrees():
        if m > n:
            objs[m] = x.obj(m)
            comps[m] = Mor.identity(x.obj(m))
    objs[n] = zk.obj
    comps[n] = zk.mor
    for m in x.degrees():
        if m > n + 1:
            diffs[m] = x.d(m)
    diffs[n + 1] = factor_through(x.d(n + 1), left=zk.mor)
    t = Complex(x.instance, objs, diffs)
    return t, ChainMap(t, x, {m: c for m, c in comps.items() if not c.src.is_zero()})


# ---------------------------------------------------------------------------
# Cycles, acyclicity, homology
# ---------------------------------------------------------------------------

def cycles(x: Complex, n: int):
    """``Z_n X = Ker(d_n)`` with its inclusion."""
    return kernel(x.d(n))


def boundary_to_cycles(x: Complex, n: int) -> Mor:
    """The map ``X_{n+1} -> Z_n X`` induced by ``d_{n+1}``."""
    z = cycles(x, n)
    return factor_through(x.d(n + 1), left=z.mor)


def is_acyclic(x: Complex) -> bool:
    """Every ``X_{n+1} -> Z_n X`` is an admissible epic."""
    for n in range(x.lo, x.hi + 1):
        if not is_admissible_epi(boundary_to_cycles(x, n)):
            return False
    return True


def homology(x: Complex, n: int):
    """``H_n X`` for abelian instances, with the projection ``Z_n X -> H_n X``."""
    if not x.instance.is_abelian:
        raise CategoryError("homology is only defined over abelian instances")
    return cokernel(boundary_to_cycles(x, n))


def homology_vanishes(x: Complex) -> bool:
    """Independent acyclicity test by rank counting (VECTQ) or lattice
    containment (FGAB); no kernel/cokernel objects are built."""
    inst = x.instance
    if inst is VECTQ:
        for n in x.degrees():
            if rank(x.d(n).matrix) + rank(x.d(n + 1).matrix) != x.obj(n).size:
                return False
        return True
    if inst is not FGAB:
        raise CategoryError("homology_vanishes needs an abelian instance")
    for n in x.degrees():
        here, below = x.obj(n), x.obj(n - 1)
        rel_below = _relations(below)
        lattice = int_kernel_basis(x.d(n).matrix.hstack(rel_below)).select_rows(range(here.size))
        bounds = x.d(n + 1).matrix.hstack(_relations(here))
        if lattice.cols and solve_int_linear(bounds, lattice, [0] * here.size) is None:
            return False
    return True


def _relations(o: Obj) -> IntMatrix:
    cols = [[q if i == j else 0 for i in range(o.size)] for j, q in enumerate(o.orders) if q]
    return IntMatrix.from_columns(cols, o.size) if cols else IntMatrix.zeros(o.size, 0)


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(cone(f).complex)


def is_degreewise(f: ChainMap, pred, degrees: Optional[Iterable[int]] = None) -> bool:
    for n in degrees if degrees is not None else f.degrees():
        if not pred(f[n]):
            return False
    return True


def is_degreewise_projective(x: Complex) -> bool:
    return all(is_projective(x.obj(n)) for n in x.degrees())


# ---------------------------------------------------------------------------
# Hom complexes
# ---------------------------------------------------------------------------

class HomComplex:
    """``Hom(X, Y)`` as a complex in VECTQ (rational instances) or FGAB.

    The degree-``n`` object is ``⊕_i Hom(X_i, Y_{i+n})`` with ``i`` ascending;
    ``to_coords``/``from_coords`` translate between a graded family of
    morphisms ``{i: X_i -> Y_{i+n}}`` and coordinates of that object.
    """

    def __init__(self, x: Complex, y: Complex):
        if x.instance is not y.instance:
            raise CategoryError("Hom complex across instances")
        self.x, self.y = x, y
        self.base = FGAB if x.instance is FGAB else VECTQ
        if x.is_zero() or y.is_zero():
            self._degrees = range(0)
        else:
            self._degrees = range(y.lo - x.hi, y.hi - x.lo + 1)
        self._parts = {}
        self._sums = {}
        for n in range(self._degrees.start - 1, self._degrees.stop):
            parts = [(i, hom_space(x.obj(i), y.obj(i + n))) for i in x.degrees()]
            parts = [(i, h) for i, h in parts if not h.obj.is_zero()]
            self._parts[n] = parts
            self._sums[n] = direct_sum(*[h.obj for _, h in parts]) if parts else None
        self._diff_cache = {}
        self._complex = None

    @property
    def complex(self) -> Complex:
        """The whole Hom complex (differentials are built on first use)."""
        if self._complex is None:
            objs = {n: self.obj(n) for n in self._degrees}
            diffs = {n: self.differential(n) for n in self._degrees}
            self._complex = Complex(self.base, objs, diffs)
        return self._complex

    def differential(self, n: int) -> Mor:
        if n not in self._diff_cache:
            self._diff_cache[n] = self._differential(n)
        return self._diff_cache[n]

    def obj(self, n: int) -> Obj:
        s = self._sums.get(n)
        return s.obj if s is not None else zero_object(self.base)

    def degrees(self) -> range:
        return self._degrees

    def to_coords(self, n: int, family: dict) -> list:
        s = self._sums.get(n)
        if s is None:
            return []
        total = [0] * s.obj.size
        for k, (i, h) in enumerate(self._parts[n]):
            f = family.get(i)
            if f is None:
                continue
            c = h.coordinates(f)
            inj = s.injections[k].matrix
            for r in range(inj.rows):
                total[r] += sum(inj.data[r][t] * c[t] for t in range(len(c)))
        return [v % o if o else v for v, o in zip(total, s.obj.orders)]

    def from_coords(self, n: int, coords) -> dict:
        s = self._sums.get(n)
        out = {}
        if s is None:
            return out
        for k, (i, h) in enumerate(self._parts[n]):
            p = s.projections[k].matrix
            c = [sum(p.data[r][t] * coords[t] for t in range(len(coords))) for r in range(p.rows)]
            out[i] = h.element(c)
        return out

    def apply_d(self, n: int, family: dict) -> dict:
        """``(df)_i = d^Y ∘ f_i - (-1)^n f_{i-1} ∘ d^X_i`` (degree ``n-1``)."""
        x, y = self.x, self.y
        sign = -1 if n % 2 else 1
        out = {}
        for i in x.degrees():
            acc = Mor.zero(x.obj(i), y.obj(i + n - 1))
            f_i = family.get(i)
            if f_i is not None:
                acc = acc + y.d(i + n) @ f_i
            f_prev = family.get(i - 1)
            if f_prev is not None:
                acc = acc - (f_prev @ x.d(i)).scale(sign)
            out[i] = acc
        return out

    def _differential(self, n: int) -> Mor:
        """Assembled part by part: a generator ``f`` of ``Hom(X_i, Y_{i+n})``
        contributes ``d^Y f`` to part ``i`` and ``-(-1)^n f d^X`` to part
        ``i + 1`` of degree ``n - 1``."""
        src, dst = self.obj(n), self.obj(n - 1)
        if n not in self._degrees:
            return Mor.zero(src, dst)
        s_src, s_dst = self._sums.get(n), self._sums.get(n - 1)
        mt = src.instance.matrix_type
        if s_src is None or s_dst is None:
            return Mor.zero(src, dst)
        x, y = self.x, self.y
        sign = -1 if n % 2 else 1
        below = {i: (k, h) for k, (i, h) in enumerate(self._parts[n - 1])}
        total = mt.zeros(dst.size, src.size)
        for k, (i, h) in enumerate(self._parts[n]):
            blocks = {}
            for t in range(h.obj.size):
                e = [0] * h.obj.size
                e[t] = 1
                f = h.element(e)
                for j, img in ((i, y.d(i + n) @ f), (i + 1, (f @ x.d(i + 1)).scale(-sign))):
                    if j in below and not img.is_zero():
                        kk, hh = below[j]
                        blocks.setdefault(kk, {})[t] = hh.coordinates(img)
            for kk, cols in blocks.items():
                hh = self._parts[n - 1][kk][1]
                m = mt.from_columns([cols.get(t, [0] * hh.obj.size) for t in range(h.obj.size)], hh.obj.size)
                total = total + s_dst.injections[kk].matrix @ m @ s_src.projections[k].matrix
        return Mor(src, dst, total)


def hom_complex(x: Complex, y: Complex) -> HomComplex:
    return HomComplex(x, y)


def _unit(base: InstanceId) -> Obj:
    return ab(1) if base is FGAB else vect(1)


def _vector_mor(base: InstanceId, target: Obj, coords) -> Mor:
    u = _unit(base)
    mt = base.matrix_type
    return Mor(u, target, mt.from_columns([list(coords)], target.size) if target.size else mt.zeros(0, 1))


def homotopy_class_group(x: Complex, y: Complex, n: int) -> Obj:
    """``H_n Hom(X, Y)``: homotopy classes of maps ``X -> Y[n]``."""
    return homology(hom_complex(x, y).complex, n).obj


def homotopy_class(f: ChainMap, n: int = 0, hc: Optional[HomComplex] = None) -> Mor:
    """Image of the cycle ``f`` in ``H_n Hom(X, Y)`` as a morphism from the
    unit object; it is zero iff ``f`` is null-homotopic."""
    hc = hc or hom_complex(f.src, f.dst)
    c = hc.complex
    v = _vector_mor(hc.base, hc.obj(n), hc.to_coords(n, f.components))
    z = cycles(c, n)
    h = homology(c, n)
    lifted = factor_through(v, left=z.mor)
    if lifted is None:
        raise CategoryError("family is not a cycle of the Hom complex")
    return h.mor @ lifted


def null_homotopy_witness(f: ChainMap) -> Optional[Homotopy]:
    """A homotopy ``f ~ 0`` found by one global linear system, or ``None``."""
    x, y = f.src, f.dst
    rng = _range_union(x, y)
    sys_ = LinearSystem(f.instance)
    unk = {}
    for i in range(rng.start - 1, rng.stop):
        if not x.obj(i).is_zero() and not y.obj(i + 1).is_zero():
            unk[i] = sys_.unknown(x.obj(i), y.obj(i + 1))
    for i in rng:
        terms = []
        if i - 1 in unk:
            terms.append((1, None, unk[i - 1], x.d(i)))
        if i in unk:
            terms.append((1, y.d(i + 1), unk[i], None))
        sys_.equation(terms, f[i])
    sol = sys_.solve()
    if sol is None:
        return None
    comps = {i: sol[k] for i, k in unk.items()}
    h = Homotopy(f, ChainMap.zero(x, y), comps)
    if not h.verify():
        raise AssertionError("homotopy solver returned an invalid witness")
    return h


def is_null_homotopic(f: ChainMap) -> bool:
    return null_homotopy_witness(f) is not None


def is_split_exact(x: Complex) -> bool:
    return null_homotopy_witness(ChainMap.identity(x)) is not None


def acyclic_by_generators(x: Complex) -> bool:
    """``X`` is acyclic iff every ``Hom(G, X)`` is, ``G`` a generator."""
    for g in generator_family(x.instance):
        if not is_acyclic(hom_complex(sphere(0, g), x).complex):
            return False
    return True


def is_degreewise_split_mono(f: ChainMap) -> bool:
    return is_degreewise(f, is_admissible_mono)


def chain_lift(left: ChainMap, right: ChainMap, top: Optional[ChainMap] = None,
               bottom: Optional[ChainMap] = None, reverse: bool = False) -> Optional[ChainMap]:
    """A diagonal ``h: B -> C`` with ``h ∘ left = top`` and ``right ∘ h = bottom``.

    ``left: A -> B``, ``right: C -> D``, ``top: A -> C``, ``bottom: B -> D``.
    Either constraint may be omitted.  Everything is one linear system over
    all degrees; ``reverse`` declares the unknowns in the opposite order,
    which generally changes which solution is returned.
    """
    b, c = left.dst, right.src
    rng = _range_union(left.src, b, c, right.dst)
    sys_ = LinearSystem(left.instance)
    degs = [n for n in rng if not b.obj(n).is_zero() and not c.obj(n).is_zero()]
    unk = {}
    for n in (reversed(degs) if reverse else degs):
        unk[n] = sys_.unknown(b.obj(n), c.obj(n))
    for n in range(rng.start, rng.stop + 1):
        terms = []
        if n in unk:
            terms.append((1, c.d(n), unk[n], None))
        if n - 1 in unk:
            terms.append((-1, None, unk[n - 1], b.d(n)))
        if terms:
            sys_.equation(terms, src=b.obj(n), dst=c.obj(n - 1))
    for n in rng:
        if top is not None and (left.src.obj(n).size and c.obj(n).size):
            sys_.equation([(1, None, unk[n], left[n])] if n in unk else [], top[n])
        if bottom is not None and (b.obj(n).size and right.dst.obj(n).size):
            sys_.equation([(1, right[n], unk[n], None)] if n in unk else [], bottom[n])
    sol = sys_.solve()
    if sol is None:
        return None
    return ChainMap(b, c, {n: sol[k] for n, k in unk.items()})
