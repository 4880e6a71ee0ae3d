"""Level-truncated Dold-Kan correspondence.

Simplicial objects are stored up to a level ``L``: objects ``A_0..A_L``,
faces ``d_i: A_n -> A_{n-1}`` and degeneracies ``s_i: A_n -> A_{n+1}``.
Monotone maps ``[m] -> [n]`` are tuples of length ``m + 1``.

``gamma`` follows the usual recipe: ``Γ(C)_n`` is the sum of copies of
``C_p`` indexed by surjections ``η: [n] -> [p]``, and a monotone ``α`` acts
on the ``η`` summand through the epi-mono factorization ``ηα = ε η'``.
With that rule ``N Γ(C)`` carries the differential ``(-1)^n d``, so the
comparison ``C -> N Γ(C)`` is the inclusion of the ``id`` summand twisted
by ``(-1)^{n(n+1)/2}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .chain import ChainMap, Complex
from .excat import (
    CategoryError,
    DirectSum,
    InstanceId,
    Mor,
    Obj,
    detect_epi_via_generators,
    direct_sum,
    factor_through,
    is_admissible_epi,
    is_iso,
    kernel,
    zero_object,
)


@dataclass(frozen=True)
class MonotoneSurjection:
    values: tuple

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def p(self) -> int:
        return self.values[-1] if self.values else -1

    def __call__(self, k: int) -> int:
        return self.values[k]


def enumerate_surjections(n: int, p: int) -> list:
    """All monotone surjections ``[n] -> [p]`` in lexicographic order."""
    if p > n or p < 0 or n < 0:
        raise ValueError(f"no surjections [{n}] -> [{p}]")
    out = []
    for jumps in combinations(range(1, n + 1), p):
        vals, v = [], 0
        for k in range(n + 1):
            if k in jumps:
                v += 1
            vals.append(v)
        out.append(tuple(vals))
    return [MonotoneSurjection(v) for v in sorted(out)]


def face_map(n: int, i: int) -> tuple:
    """``δ_i: [n-1] -> [n]``, skipping ``i``."""
    return tuple(k if k < i else k + 1 for k in range(n))


def degeneracy_map(n: int, i: int) -> tuple:
    """``σ_i: [n+1] -> [n]``, hitting ``i`` twice."""
    return tuple(k if k <= i else k - 1 for k in range(n + 2))


def epi_mono(alpha: tuple):
    """``alpha = ε ∘ η`` with ``η`` surjective, ``ε`` injective."""
    img = sorted(set(alpha))
    pos = {v: k for k, v in enumerate(img)}
    return tuple(img), tuple(pos[v] for v in alpha)


@dataclass
class SimplicialObject:
    instance: InstanceId
    level: int
    objects: list
    faces: dict = field(default_factory=dict)        # (n, i) -> Mor A_n -> A_{n-1}
    degeneracies: dict = field(default_factory=dict)  # (n, i) -> Mor A_n -> A_{n+1}

    def d(self, n: int, i: int) -> Mor:
        return self.faces[(n, i)]

    def s(self, n: int, i: int) -> Mor:
        return self.degeneracies[(n, i)]

    def check_shape(self):
        if len(self.objects) != self.level + 1:
            raise CategoryError("wrong number of levels")
        for n in range(1, self.level + 1):
            for i in range(n + 1):
                f = self.faces.get((n, i))
                if f is None or f.src != self.objects[n] or f.dst != self.objects[n - 1]:
                    raise CategoryError(f"face d_{i} at level {n} is missing or misshapen")
        for n in range(self.level):
            for i in range(n + 1):
                s = self.degeneracies.get((n, i))
                if s is None or s.src != self.objects[n] or s.dst != self.objects[n + 1]:
                    raise CategoryError(f"degeneracy s_{i} at level {n} is missing or misshapen")

    def identity_violations(self) -> list:
        """Names of the simplicial identities that fail within the level."""
        bad = []
        d, s, top = self.d, self.s, self.level
        for n in range(2, top + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d(n - 1, i) @ d(n, j) != d(n - 1, j - 1) @ d(n, i):
                        bad.append(f"d{i}d{j}@{n}")
        for n in range(top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s(n + 1, i) @ s(n, j) != s(n + 1, j + 1) @ s(n, i):
                        bad.append(f"s{i}s{j}@{n}")
        for n in range(top):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = d(n + 1, i) @ s(n, j)
                    if i < j:
                        rhs = s(n - 1, j - 1) @ d(n, i)
                    elif i in (j, j + 1):
                        rhs = Mor.identity(self.objects[n])
                    else:
                        rhs = s(n - 1, j) @ d(n, i - 1)
                    if lhs != rhs:
                        bad.append(f"d{i}s{j}@{n}")
        return bad

    def is_valid(self) -> bool:
        self.check_shape()
        return not self.identity_violations()

    def act(self, alpha: tuple, n: int) -> Mor:
        """``A(α): A_n -> A_m`` for a monotone ``α: [m] -> [n]``."""
        eps, eta = epi_mono(alpha)
        q = len(eps) - 1
        out = Mor.identity(self.objects[n])
        # injective part: drop the missing indices from the top down
        missing = [k for k in range(n + 1) if k not in eps]
        level = n
        for k in reversed(missing):
            out = self.d(level, k) @ out
            level -= 1
        # surjective part: degeneracies for each repeat, from the right
        word = list(eta)
        degs = []
        while len(word) > q + 1:
            i = max(k for k in range(len(word) - 1) if word[k] == word[k + 1])
            degs.append((len(word) - 2, i))
            del word[i + 1]
        for lvl, i in reversed(degs):
            out = self.s(lvl, i) @ out
        return out

    def is_constant_on(self, a: Obj) -> bool:
        return all(o == a for o in self.objects) and all(
            m == Mor.identity(a) for m in list(self.faces.values()) + list(self.degeneracies.values()))


@dataclass(frozen=True)
class SimplicialMap:
    src: SimplicialObject
    dst: SimplicialObject
    components: tuple

    def is_valid(self) -> bool:
        a, b, f = self.src, self.dst, self.components
        if len(f) != a.level + 1 or a.level != b.level:
            return False
        for n in range(1, a.level + 1):
            for i in range(n + 1):
                if f[n - 1] @ a.d(n, i) != b.d(n, i) @ f[n]:
                    return False
        for n in range(a.level):
            for i in range(n + 1):
                if f[n + 1] @ a.s(n, i) != b.s(n, i) @ f[n]:
                    return False
        return True


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

def _summands(c: Complex, n: int) -> list:
    out = []
    for p in range(n + 1):
        if c.obj(p).is_zero():
            continue
        out.extend(enumerate_surjections(n, p))
    return out


@dataclass(frozen=True)
class _GammaLevel:
    index: list    # surjections in block order
    sum: object    # DirectSum


def _gamma_levels(c: Complex, level: int) -> list:
    out = []
    for n in range(level + 1):
        idx = _summands(c, n)
        if idx:
            s = direct_sum(*[c.obj(e.p) for e in idx])
        else:
            s = DirectSum(zero_object(c.instance), (), ())
        out.append(_GammaLevel(idx, s))
    return out


def _gamma_action(c: Complex, levels: list, alpha: tuple, n: int) -> Mor:
    """``Γ(α): Γ(C)_n -> Γ(C)_m`` for ``α: [m] -> [n]``."""
    m = len(alpha) - 1
    src, dst = levels[n], levels[m]
    pos = {e.values: k for k, e in enumerate(dst.index)}
    total = Mor.zero(src.sum.obj, dst.sum.obj)
    for k, eta in enumerate(src.index):
        p = eta.p
        eps, eta2 = epi_mono(tuple(eta(a) for a in alpha))
        q = len(eps) - 1
        if q == p:
            block = Mor.identity(c.obj(p))
        elif q == p - 1 and eps == tuple(range(p)):
            block = c.d(p)
        else:
            continue
        if block.dst.is_zero():
            continue
        total = total + dst.sum.injections[pos[eta2]] @ block @ src.sum.projections[k]
    return total


def gamma(c: Complex, level: int) -> SimplicialObject:
    if not c.is_zero() and (c.lo < 0 or c.hi > level):
        raise CategoryError(f"complex must be supported in [0, {level}]")
    levels = _gamma_levels(c, level)
    a = SimplicialObject(c.instance, level, [lv.sum.obj for lv in levels])
    for n in range(1, level + 1):
        for i in range(n + 1):
            a.faces[(n, i)] = _gamma_action(c, levels, face_map(n, i), n)
    for n in range(level):
        for i in range(n + 1):
            a.degeneracies[(n, i)] = _gamma_action(c, levels, degeneracy_map(n, i), n)
    if not a.is_valid():
        raise AssertionError("gamma produced a non-simplicial object: " + ", ".join(a.identity_violations()))
    return a


def gamma_map(f: ChainMap, level: int) -> SimplicialMap:
    """``Γ(f)``: ``f_p`` on every summand indexed by ``η: [n] -> [p]``."""
    a, b = gamma(f.src, level), gamma(f.dst, level)
    la, lb = _gamma_levels(f.src, level), _gamma_levels(f.dst, level)
    comps = []
    for n in range(level + 1):
        pos = {e.values: k for k, e in enumerate(lb[n].index)}
        total = Mor.zero(a.objects[n], b.objects[n])
        for k, eta in enumerate(la[n].index):
            if eta.values in pos:
                total = total + lb[n].sum.injections[pos[eta.values]] @ f[eta.p] @ la[n].sum.projections[k]
        comps.append(total)
    return SimplicialMap(a, b, tuple(comps))


def gamma_size(c: Complex, n: int) -> int:
    """Expected size of ``Γ(C)_n``: ``Σ_p C(n, p) · size(C_p)``."""
    return sum(comb(n, p) * c.obj(p).size for p in range(n + 1))


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def _normal_inclusions(a: SimplicialObject) -> list:
    incs = [Mor.identity(a.objects[0])]
    for n in range(1, a.level + 1):
        obj = a.objects[n]
        if n == 1:
            stacked = a.d(1, 0)
        else:
            s = direct_sum(*[a.objects[n - 1]] * n)
            stacked = Mor.zero(obj, s.obj)
            for i in range(n):
                stacked = stacked + s.injections[i] @ a.d(n, i)
        incs.append(kernel(stacked).mor)
    return incs


def normalize(a: SimplicialObject) -> Complex:
    c, _ = normalize_with_inclusions(a)
    return c


def normalize_with_inclusions(a: SimplicialObject):
    """``N A`` together with the inclusions ``N A_n -> A_n``."""
    incs = _normal_inclusions(a)
    diffs = {}
    for n in range(1, a.level + 1):
        d = factor_through(a.d(n, n) @ incs[n], left=incs[n - 1])
        if d is None:
            raise AssertionError("last face does not preserve normalized chains")
        diffs[n] = d if n % 2 == 0 else -d
    return Complex(a.instance, {n: m.src for n, m in enumerate(incs)}, diffs), incs


def normalize_map(f: SimplicialMap) -> ChainMap:
    na, ia = normalize_with_inclusions(f.src)
    nb, ib = normalize_with_inclusions(f.dst)
    comps = {}
    for n in range(f.src.level + 1):
        g = factor_through(f.components[n] @ ia[n], left=ib[n])
        if g is None:
            raise AssertionError("simplicial map does not preserve normalized chains")
        comps[n] = g
    return ChainMap(na, nb, comps)


def _twist(n: int) -> int:
    return -1 if (n * (n + 1) // 2) % 2 else 1


def comparison_map(c: Complex, level: int) -> ChainMap:
    """``C -> N Γ(C)``: the ``id`` summand, with sign ``(-1)^{n(n+1)/2}``."""
    a = gamma(c, level)
    nc, incs = normalize_with_inclusions(a)
    levels = _gamma_levels(c, level)
    comps = {}
    for n in range(level + 1):
        if c.obj(n).is_zero():
            continue
        k = [e.values for e in levels[n].index].index(tuple(range(n + 1)))
        into = levels[n].sum.injections[k].scale(_twist(n))
        g = factor_through(into, left=incs[n])
        if g is None:
            raise AssertionError("id summand is not normalized")
        comps[n] = g
    return ChainMap(c, nc, comps)


def check_equivalence(c: Complex, level: int) -> bool:
    """``N Γ(C) ≅ C`` through the twisted ``id``-summand inclusion."""
    try:
        phi = comparison_map(c, level)
    except CategoryError:
        return False
    return all(is_iso(phi[n]) for n in range(level + 1))


def counit(a: SimplicialObject) -> SimplicialMap:
    """``Γ N A -> A``: on the ``η`` summand, ``A(η)`` restricted to ``N A_p``."""
    nc, incs = normalize_with_inclusions(a)
    g = gamma(_untwist(nc), a.level)
    levels = _gamma_levels(_untwist(nc), a.level)
    comps = []
    for n in range(a.level + 1):
        total = Mor.zero(g.objects[n], a.objects[n])
        for k, eta in enumerate(levels[n].index):
            total = total + a.act(eta.values, eta.p) @ incs[eta.p] @ levels[n].sum.projections[k]
        comps.append(total)
    return SimplicialMap(g, a, tuple(comps))


def _untwist(nc: Complex) -> Complex:
    """``N A`` with the differential ``(-1)^n`` factor removed."""
    return Complex(nc.instance, nc.objects, {n: (d if n % 2 == 0 else -d) for n, d in nc.diffs.items()})


def check_counit(a: SimplicialObject) -> bool:
    """``Γ N A -> A`` is a levelwise isomorphism of simplicial objects."""
    e = counit(a)
    return e.is_valid() and all(is_iso(m) for m in e.components)


def conjugate(a: SimplicialObject, isos: list) -> SimplicialObject:
    """Transport the structure along level isomorphisms ``φ_n: A_n -> B_n``."""
    from .excat import split_section
    inv = [split_section(p) for p in isos]
    if any(i is None for i in inv):
        raise CategoryError("conjugating maps must be isomorphisms")
    b = SimplicialObject(a.instance, a.level, [p.dst for p in isos])
    for (n, i), d in a.faces.items():
        b.faces[(n, i)] = isos[n - 1] @ d @ inv[n]
    for (n, i), s in a.degeneracies.items():
        b.degeneracies[(n, i)] = isos[n + 1] @ s @ inv[n]
    return b


def constant(a: Obj, level: int) -> SimplicialObject:
    s = SimplicialObject(a.instance, level, [a] * (level + 1))
    one = Mor.identity(a)
    for n in range(1, level + 1):
        for i in range(n + 1):
            s.faces[(n, i)] = one
    for n in range(level):
        for i in range(n + 1):
            s.degeneracies[(n, i)] = one
    return s


@dataclass(frozen=True)
class StructureReport:
    is_simplicial_map: bool
    normalized_is_chain_map: bool
    generator_surjective: bool          # Hom(G, f_n) onto for n > 0
    normalized_is_fibration: bool       # N(f)_n admissible epic for n > 0
    normalized_is_quasi_iso: bool

    @property
    def consistent(self) -> bool:
        return self.is_simplicial_map and self.normalized_is_chain_map and (
            not self.generator_surjective or self.normalized_is_fibration)


def check_n_preserves_structure(f: SimplicialMap) -> StructureReport:
    from .chain import is_quasi_iso
    if not f.is_valid():
        raise CategoryError("not a simplicial map")
    try:
        nf = normalize_map(f)
        chain_ok = True
    except CategoryError:
        return StructureReport(True, False, False, False, False)
    level = f.src.level
    surj = all(detect_epi_via_generators(f.components[n]) for n in range(1, level + 1))
    fib = all(is_admissible_epi(nf[n]) for n in range(1, level + 1))
    return StructureReport(True, chain_ok, surj, fib, is_quasi_iso(nf))


__all__ = [
    "MonotoneSurjection", "SimplicialObject", "SimplicialMap", "StructureReport",
    "enumerate_surjections", "face_map", "degeneracy_map", "epi_mono",
    "gamma", "gamma_map", "gamma_size", "normalize", "normalize_with_inclusions", "normalize_map",
    "comparison_map", "check_equivalence", "counit", "check_counit", "conjugate", "constant",
    "check_n_preserves_structure",
]
