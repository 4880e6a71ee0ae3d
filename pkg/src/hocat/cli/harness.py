"""Property suites and reports.

A property is a function of a :class:`Case` that returns ``True`` (holds),
``False`` (violated) or ``None`` (precondition not met, counted as vacuous).
Exceptions count as violations.  Each case gets its own seed derived from
``(seed, property, index)``, so any failure can be replayed alone; the values
a property registered with :meth:`Case.keep` are serialized into the failure
as its reproduction.
"""

from __future__ import annotations

import json
import random
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from itertools import product
from typing import Callable, Optional

from .. import chain as ch
from .. import doldkan as dk
from .. import freealg as fa
from .. import model as md
from .. import monoidal as mo
from .. import resolve as rs
from ..excat import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    InstanceId,
    LinearSystem,
    Mor,
    ab,
    classify,
    cokernel,
    detect_epi_via_generators,
    direct_sum,
    epi_mono_factorization,
    factor_through,
    generator_family,
    is_admissible_epi,
    is_admissible_mono,
    is_iso,
    is_projective,
    is_projective_by_splitting,
    is_short_exact,
    is_strict,
    kernel,
    projective_cover,
    pullback_along_epi,
    pushout_along_mono,
    split_section,
    vect,
)
from ..exactlin import (
    IntMatrix,
    RatMatrix,
    determinant,
    nullspace_basis,
    rank,
    rref,
    smith_normal_form,
    solve_linear,
)
from . import generators as gen
from .serialize import dumps, workspace_of

INSTANCES = (VECTQ, FILTQ, FGAB)
ABELIAN = (VECTQ, FGAB)
TENSOR = (VECTQ, FGAB)
SUITES = ("excat", "chain", "resolve", "model", "monoidal", "doldkan", "freealg", "all")


class Case:
    """One randomized case.  ``flavor`` pins the model flavor for properties
    that would otherwise draw it at random."""

    def __init__(self, instance: InstanceId, seed: int, flavor=None):
        self.instance = instance
        self.seed = seed
        self.flavor = flavor
        self.rng = random.Random(seed)
        self.values = {}

    def keep(self, **values):
        self.values.update(values)


@dataclass(frozen=True)
class Property:
    name: str
    suite: str
    fn: Callable[[Case], Optional[bool]]
    instances: tuple = INSTANCES
    # instance-independent properties run once, on the first instance
    instance_free: bool = False


@dataclass
class Failure:
    seed: int
    invariant: str
    reproduction: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"seed": self.seed, "invariant": self.invariant, "detail": self.detail,
                "reproduction": json.loads(self.reproduction) if self.reproduction else None}


@dataclass
class Report:
    suite: str
    instance: str
    cases: int
    seed: int
    checks: dict = field(default_factory=dict)   # invariant -> [passed, vacuous]
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def body(self) -> dict:
        return {
            "suite": self.suite,
            "instance": self.instance,
            "cases": self.cases,
            "seed": self.seed,
            "ok": self.ok,
            "checks": {k: {"passed": v[0], "vacuous": v[1]} for k, v in sorted(self.checks.items())},
            "failures": [f.as_dict() for f in self.failures],
        }

    def to_json(self, timing: bool = True) -> str:
        d = self.body()
        if timing:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return json.dumps(d, indent=1, sort_keys=True)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"suite {self.suite} on {self.instance}: {self.cases} cases, seed {self.seed}: "
                 + ("ok" if self.ok else f"{len(self.failures)} failure(s)")]
        for k, (passed, vacuous) in sorted(self.checks.items()):
            lines.append(f"  {k}: {passed} passed" + (f", {vacuous} vacuous" if vacuous else ""))
        for f in self.failures:
            lines.append(f"  FAIL {f.invariant} (case seed {f.seed}): {f.detail}")
        if timing:
            lines.append(f"  elapsed {self.elapsed:.2f}s")
        return "\n".join(lines)


PROPERTIES: dict = {}


def prop(suite: str, instances=INSTANCES, instance_free: bool = False):
    def wrap(fn):
        PROPERTIES[fn.__name__] = Property(fn.__name__, suite, fn, tuple(instances), instance_free)
        return fn
    return wrap


def case_seed(seed: int, name: str, index: int) -> int:
    return random.Random(f"{seed}:{name}:{index}").getrandbits(48)


def run_case(p: Property, instance: InstanceId, seed: int, flavor=None):
    """Run one case; returns ``(outcome, failure or None)``."""
    case = Case(instance, seed, flavor)
    try:
        out = p.fn(case)
        detail = "" if out is not False else "property returned false"
    except Exception as e:  # noqa: BLE001 - any exception is a violation
        out = False
        detail = f"{type(e).__name__}: {e}"
        tb = traceback.extract_tb(e.__traceback__)
        if tb:
            detail += f" [{tb[-1].name}]"
    if out is False:
        try:
            repro = dumps(workspace_of(instance, **case.values))
        except Exception:  # noqa: BLE001 - a reproduction is best effort
            repro = ""
        if flavor is not None:
            detail += f" (flavor {flavor.value})"
        return False, Failure(seed, p.name, repro, detail)
    return out, None


def run_property(p: Property, instance: InstanceId, cases: int, seed: int, report: Report, flavor=None,
                 first: int = 0):
    """Cases ``first .. first + cases - 1`` of ``p`` on one instance."""
    passed = vacuous = 0
    tag = p.name if flavor is None else f"{p.name}/{flavor.value}"
    for k in range(first, first + cases):
        out, failure = run_case(p, instance, case_seed(seed, tag, k), flavor)
        if failure is not None:
            report.failures.append(failure)
        elif out is None:
            vacuous += 1
        else:
            passed += 1
    key = p.name if p.instance_free else f"{p.name}[{instance.value}]"
    if flavor is not None:
        key = f"{key}/{flavor.value}"
    old = report.checks.get(key, [0, 0])
    report.checks[key] = [old[0] + passed, old[1] + vacuous]


def select(suite: str) -> list:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [p for p in PROPERTIES.values() if suite == "all" or p.suite == suite]


def run(suite: str, instance, cases: int, seed: int) -> Report:
    """Run every property of ``suite`` for ``cases`` cases on ``instance``
    (an :class:`InstanceId`, its name, or ``None``/"all" for all three)."""
    props = select(suite)
    if instance in (None, "all", "ALL"):
        insts = INSTANCES
        label = "all"
    else:
        inst = instance if isinstance(instance, InstanceId) else InstanceId(str(instance).upper())
        insts = (inst,)
        label = inst.value
    report = Report(suite, label, cases, seed)
    start = time.perf_counter()
    for p in props:
        if p.instance_free:
            run_property(p, insts[0], cases, seed, report)
            continue
        for inst in insts:
            if inst in p.instances:
                run_property(p, inst, cases, seed, report)
    report.elapsed = time.perf_counter() - start
    return report


def replay(invariant: str, instance: InstanceId, seed: int, flavor=None):
    """Rerun a single case of a property by its case seed."""
    return run_case(PROPERTIES[invariant], instance, seed, flavor)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _rat_matrix(rng, rows, cols, spread=3) -> RatMatrix:
    return RatMatrix(rows, cols, [[Fraction(rng.randint(-spread, spread), rng.choice((1, 1, 2, 3)))
                                   for _ in range(cols)] for _ in range(rows)])


def _int_matrix(rng, rows, cols, spread=6) -> IntMatrix:
    return IntMatrix(rows, cols, [[rng.randint(-spread, spread) for _ in range(cols)] for _ in range(rows)])


def _as_mor(m) -> Mor:
    """Wrap a bare matrix as a morphism so that it can be serialized."""
    if isinstance(m, IntMatrix):
        return Mor(ab(m.cols), ab(m.rows), m)
    return Mor(vect(m.cols), vect(m.rows), m)


def two_sided_inverse(f: Mor) -> Optional[Mor]:
    """``g`` with ``g ∘ f = 1`` and ``f ∘ g = 1``, found by solving for ``g``
    directly in ``Hom(dst, src)``."""
    sys_ = LinearSystem(f.instance)
    g = sys_.unknown(f.dst, f.src)
    sys_.equation([(1, None, g, f)], Mor.identity(f.src))
    sys_.equation([(1, f, g, None)], Mor.identity(f.dst))
    sol = sys_.solve()
    return None if sol is None else sol[0]


def weq(f: ch.ChainMap) -> bool:
    """Quasi-isomorphism test routed through homology where it exists."""
    if f.instance.is_abelian:
        return ch.homology_vanishes(ch.cone(f).complex)
    return ch.is_quasi_iso(f)


def _flavor(case: Case):
    if case.flavor is not None:
        return case.flavor
    return md.CH_GEQ0 if case.rng.random() < 0.5 else md.CH_PLUS


def _range_for(flavor):
    return (0, 2) if flavor is md.CH_GEQ0 else (-1, 1)


def random_square(left: ch.ChainMap, right: ch.ChainMap, rng) -> md.LiftingProblem:
    """A commuting square on ``left`` and ``right``: ``top = h ∘ left`` and
    ``bottom = right ∘ h + k ∘ q`` with ``q`` the cokernel of ``left``."""
    h = gen.random_chain_map(left.dst, right.src, rng)
    c, q = ch.chain_cokernel(left)
    k = gen.random_chain_map(c, right.dst, rng)
    return md.LiftingProblem(h @ left, right @ h + k @ q, left, right)


# ---------------------------------------------------------------------------
# excat (and the linear algebra beneath it)
# ---------------------------------------------------------------------------

@prop("excat", instance_free=True)
def rref_idempotent_and_rank(case):
    r = case.rng
    m = _rat_matrix(r, r.randint(0, 4), r.randint(0, 4))
    case.keep(m=_as_mor(m))
    e, _ = rref(m)
    return rref(e)[0] == e and rank(m) == m.cols - nullspace_basis(m).cols


@prop("excat", instance_free=True)
def smith_form_certificate(case):
    r = case.rng
    a = _int_matrix(r, r.randint(0, 4), r.randint(0, 4))
    case.keep(a=_as_mor(a))
    s = smith_normal_form(a)
    if s.U @ a @ s.V != s.D:
        return False
    if abs(determinant(s.U)) != 1 or abs(determinant(s.V)) != 1:
        return False
    diag = s.diagonal
    off = all(s.D.data[i][j] == 0 for i in range(s.D.rows) for j in range(s.D.cols) if i != j)
    nz = [d for d in diag if d]
    chain_ok = all(d > 0 for d in nz) and all(nz[k + 1] % nz[k] == 0 for k in range(len(nz) - 1))
    zeros_last = all(d == 0 for d in diag[len(nz):])
    return off and chain_ok and zeros_last


@prop("excat", instance_free=True)
def solve_linear_iff_rank(case):
    r = case.rng
    rows = r.randint(0, 4)
    a = _rat_matrix(r, rows, r.randint(0, 4))
    if r.random() < 0.5 and a.cols:
        b = a @ _rat_matrix(r, a.cols, 1)
    else:
        b = _rat_matrix(r, rows, 1)
    case.keep(a=_as_mor(a), b=_as_mor(b))
    x = solve_linear(a, b)
    solvable = rank(a) == rank(a.hstack(b))
    if x is not None and a @ x != b:
        return False
    return (x is not None) == solvable


@prop("excat")
def admissible_iff_factorization(case):
    f = gen.random_morphism(case.instance, case.rng)
    case.keep(f=f)
    e, m = epi_mono_factorization(f)
    if m is None or m @ e != f or not is_admissible_epi(e):
        return False
    return classify(f).is_admissible == is_admissible_mono(m)


@prop("excat")
def iso_iff_admissible_mono_and_epi(case):
    r = case.rng
    if r.random() < 0.3:
        x = gen.random_object(case.instance, r, 3)
        f, _ = gen.random_automorphism(x, r)
        if r.random() < 0.5:
            f = f + gen.random_mor(x, x, r, density=0.2, spread=1)
    else:
        f = gen.random_morphism(case.instance, r)
    case.keep(f=f)
    c = classify(f)
    return (c.is_admissible_mono and c.is_admissible_epi) == (two_sided_inverse(f) is not None)


@prop("excat")
def obscure_axiom(case):
    r = case.rng
    a = gen.random_object(case.instance, r, 2)
    b = gen.random_object(case.instance, r, 3)
    i = gen.random_mor(a, b, r, density=r.choice((0.5, 1.0)))
    if r.random() < 0.5:
        # j ∘ i often admissible monic: j retracts onto a summand containing a
        c = direct_sum(b, a)
        j = c.injections[0] + c.injections[1] @ gen.random_mor(b, a, r)
    else:
        j = gen.random_mor(b, gen.random_object(case.instance, r, 3), r)
    case.keep(i=i, j=j)
    if not is_admissible_mono(j @ i):
        return None
    return is_admissible_mono(i)


@prop("excat")
def pushout_along_mono_is_bicartesian(case):
    r = case.rng
    g = gen.random_morphism(case.instance, r)
    i = kernel(g).mor
    f = gen.random_mor(i.src, gen.random_object(case.instance, r, 2), r)
    case.keep(i=i, f=f)
    sq = pushout_along_mono(i, f)
    s = direct_sum(i.dst, f.dst)
    m = s.injections[0] @ i - s.injections[1] @ f
    e = sq.other @ s.projections[0] + sq.along @ s.projections[1]
    return is_short_exact(m, e) and sq.other @ i == sq.along @ f


@prop("excat")
def pullback_along_epi_is_bicartesian(case):
    r = case.rng
    g = gen.random_morphism(case.instance, r)
    p = cokernel(g).mor
    f = gen.random_mor(gen.random_object(case.instance, r, 2), p.dst, r)
    case.keep(p=p, f=f)
    sq = pullback_along_epi(p, f)
    s = direct_sum(p.src, f.src)
    e = p @ s.projections[0] - f @ s.projections[1]
    m = s.injections[0] @ sq.other + s.injections[1] @ sq.along
    return is_short_exact(m, e) and p @ sq.other == f @ sq.along


@prop("excat")
def epi_detection_by_generators(case):
    f = gen.random_morphism(case.instance, case.rng)
    case.keep(f=f)
    return detect_epi_via_generators(f) == is_admissible_epi(f)


@prop("excat")
def projectivity_dual_oracle(case):
    x = gen.random_object(case.instance, case.rng, 3)
    case.keep(x=x)
    return is_projective(x) == is_projective_by_splitting(x)


@prop("excat", instances=(FILTQ,))
def filtered_strictness_dual_oracle(case):
    f = gen.random_morphism(case.instance, case.rng)
    case.keep(f=f)
    return is_strict(f) == classify(f).coimage_image_iso


# ---------------------------------------------------------------------------
# chain
# ---------------------------------------------------------------------------

@prop("chain")
def acyclicity_oracles_agree(case):
    x = gen.random_complex(case.instance, case.rng)
    case.keep(x=x)
    a = ch.is_acyclic(x)
    if a != ch.acyclic_by_generators(x):
        return False
    if case.instance.is_abelian and a != ch.homology_vanishes(x):
        return False
    return True


@prop("chain")
def quasi_iso_iff_acyclic_cone(case):
    f = gen.random_map(case.instance, case.rng)
    case.keep(f=f)
    c = ch.cone(f)
    if not (c.pi @ c.tau).is_zero():
        return False
    q = ch.is_quasi_iso(f)
    if case.instance.is_abelian and q != ch.homology_vanishes(c.complex):
        return False
    return q == ch.is_acyclic(ch.cone(f).complex)


@prop("chain")
def cone_is_degreewise_split(case):
    f = gen.random_map(case.instance, case.rng)
    case.keep(f=f)
    c, tau, pi = ch.cone(f)
    for n in c.degrees():
        t, p = tau[n], pi[n]
        if not (p @ t).is_zero():
            return False
        s = split_section(p)
        if s is None or p @ s != Mor.identity(p.dst):
            return False
        one = Mor.identity(c.obj(n))
        r = factor_through(one - s @ p, left=t)
        if r is None or r @ t != Mor.identity(t.src) or t @ r + s @ p != one:
            return False
    return True


@prop("chain")
def null_homotopy_dual_oracle(case):
    r = case.rng
    x = gen.random_complex(case.instance, r, 2)
    y = gen.random_complex(case.instance, r, 2)
    f = gen.random_null_homotopic(x, y, r) if r.random() < 0.5 else gen.random_chain_map(x, y, r)
    case.keep(f=f)
    w = ch.null_homotopy_witness(f)
    if w is not None and not w.verify():
        return False
    return (w is not None) == ch.homotopy_class(f).is_zero()


@prop("chain")
def homotopy_equivalence_is_quasi_iso(case):
    f, g = gen.random_homotopy_equivalence(case.instance, case.rng)
    case.keep(f=f, g=g)
    if ch.null_homotopy_witness(g @ f - ch.ChainMap.identity(f.src)) is None:
        return False
    if ch.null_homotopy_witness(f @ g - ch.ChainMap.identity(f.dst)) is None:
        return False
    return ch.is_quasi_iso(f) and ch.is_quasi_iso(g)


@prop("chain")
def split_exact_implies_acyclic(case):
    r = case.rng
    x = gen.random_acyclic(case.instance, r) if r.random() < 0.5 else gen.random_complex(case.instance, r)
    case.keep(x=x)
    if not ch.is_split_exact(x):
        return None
    return ch.is_acyclic(x)


@prop("chain")
def hom_complex_cycles_are_chain_maps(case):
    r = case.rng
    x = gen.random_complex(case.instance, r, 2)
    y = gen.random_complex(case.instance, r, 2)
    hc = ch.hom_complex(x, y)
    degs = list(hc.degrees()) or [0]
    n = r.choice(degs)
    size = hc.obj(n).size
    if r.random() < 0.5 and size:
        z = ch.cycles(hc.complex, n)
        w = [r.randint(-2, 2) for _ in range(z.obj.size)]
        coords = [sum(z.mor.matrix.data[i][t] * w[t] for t in range(len(w))) for i in range(size)]
    else:
        coords = [r.randint(-2, 2) for _ in range(size)]
    case.keep(x=x, y=y)
    family = hc.from_coords(n, coords)
    is_cycle = all(m.is_zero() for m in hc.apply_d(n, family).values())
    try:
        ch.ChainMap(x, ch.shift(y, n), family)
        is_map = True
    except CategoryError:
        is_map = False
    return is_cycle == is_map


@prop("chain")
def workspace_round_trip(case):
    from .serialize import loads
    r = case.rng
    f = gen.random_map(case.instance, r)
    x = gen.random_complex(case.instance, r)
    ws = workspace_of(case.instance, f=f, x=x, a=f.src.obj(f.src.lo) if not f.src.is_zero() else x.obj(0),
                      m=gen.random_morphism(case.instance, r))
    if r.random() < 0.3:
        ws.simplicial["g"] = dk.gamma(gen.random_complex(case.instance, r, 1, 0, 1), 2)
    case.keep(f=f, x=x)
    text = dumps(ws)
    back = loads(text)
    return dumps(back) == text and back.chain_maps["f"] == f and back.complexes["x"] == x


# ---------------------------------------------------------------------------
# resolve
# ---------------------------------------------------------------------------

@prop("resolve")
def resolution_postconditions(case):
    x = gen.random_complex(case.instance, case.rng)
    case.keep(x=x)
    res = rs.resolve_complex(x)
    if not res.verify():
        return False
    return weq(res.map)


def _ext_probes(case):
    if case.instance is FGAB:
        probes = [ab(1), ab(0, [2]), ab(0, [3]), ab(0, [4])]
    else:
        probes = list(generator_family(case.instance))
    return probes + [gen.random_object(case.instance, case.rng, 2)]


@prop("resolve")
def ext1_vanishing_iff_projective(case):
    a = gen.random_object(case.instance, case.rng, 3)
    case.keep(a=a)
    vanish = all(rs.ext_group(1, a, b).is_zero() for b in _ext_probes(case))
    _, u = projective_cover(a)
    splits = split_section(u) is not None
    return vanish == splits == is_projective(a)


@prop("resolve")
def acyclic_kernel_iff_quotient_quasi_iso(case):
    i, p = gen.random_ses(case.instance, case.rng)
    case.keep(i=i, p=p)
    if not all(is_short_exact(i[n], p[n]) for n in i.dst.degrees()):
        return False
    return ch.is_acyclic(i.src) == ch.is_quasi_iso(p)


@prop("resolve")
def comparison_lift_unique_up_to_homotopy(case):
    f = gen.random_morphism(case.instance, case.rng, 2)
    case.keep(f=f)
    p, q = rs.resolve_object(f.src), rs.resolve_object(f.dst)
    a = rs.comparison_lift(f, p, q)
    b = rs.comparison_lift(f, p, q, reverse=True)
    over = ch.ChainMap(p.target, q.target, {0: f}) @ p.map
    if q.map @ a != over or q.map @ b != over:
        return False
    return ch.null_homotopy_witness(a - b) is not None


@prop("resolve", instances=ABELIAN)
def long_exact_homology_sequence(case):
    i, p = gen.random_ses(case.instance, case.rng)
    case.keep(i=i, p=p)
    return rs.les_is_exact(rs.homology_les(i, p))


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

@prop("model")
def two_out_of_three(case):
    r = case.rng
    f = gen.random_map(case.instance, r)
    g = gen.random_map_from(f.dst, r)
    case.keep(f=f, g=g)
    flags = (weq(f), weq(g), weq(g @ f))
    return sum(flags) != 2


def _factorization_input(case):
    flavor = _flavor(case)
    lo, hi = _range_for(flavor)
    f = gen.random_map(case.instance, case.rng, 2, lo, hi)
    case.keep(f=f)
    return f, flavor


@prop("model")
def trivial_cofibration_fibration_factorization(case):
    f, flavor = _factorization_input(case)
    w = md.factor_triv_cof_fib(f, flavor, check=False)
    cl = md.classify_map_model(w.left, flavor)
    cr = md.classify_map_model(w.right, flavor)
    if w.right @ w.left != f or not (cl.is_trivial_cofibration and cr.is_fibration):
        return False
    # the split-exact-projective cokernel test agrees with cofibration ∧ weq
    if not (cl.is_cofibration and cl.is_weak_equivalence and weq(w.left)):
        return False
    return md.cokernel_is_split_projective(w.left)


@prop("model")
def cofibration_trivial_fibration_factorization(case):
    f, flavor = _factorization_input(case)
    w = md.factor_cof_triv_fib(f, flavor, check=False)
    cl = md.classify_map_model(w.left, flavor)
    cr = md.classify_map_model(w.right, flavor)
    return w.right @ w.left == f and cl.is_cofibration and cr.is_trivial_fibration and weq(w.right)


def lifting_square(case, flavor):
    r = case.rng
    lo, hi = _range_for(flavor)
    inst = case.instance
    if r.random() < 0.5:
        left = md.factor_triv_cof_fib(gen.random_map(inst, r, 2, lo, hi), flavor, check=False).left
        right = md.factor_triv_cof_fib(gen.random_map(inst, r, 2, lo, hi), flavor, check=False).right
    else:
        if r.random() < 0.3:
            left = r.choice(md.generating_cofibrations(inst, flavor, 2))
        else:
            left = md.factor_cof_triv_fib(gen.random_map(inst, r, 2, lo, hi), flavor, check=False).left
        right = md.factor_cof_triv_fib(gen.random_map(inst, r, 2, lo, hi), flavor, check=False).right
    return random_square(left, right, r)


def _lifting(case, flavor):
    sq = lifting_square(case, flavor)
    case.keep(top=sq.top, bottom=sq.bottom, left=sq.left, right=sq.right)
    return md.solve_lifting(sq, flavor).verify()


@prop("model")
def lifting_nonnegative(case):
    return _lifting(case, md.CH_GEQ0)


@prop("model")
def lifting_bounded_below(case):
    return _lifting(case, md.CH_PLUS)


@prop("model")
def retract_argument_matches_cofibration(case):
    flavor = _flavor(case)
    lo, hi = _range_for(flavor)
    f = gen.random_cofibration_candidate(case.instance, case.rng, 2, lo, hi)
    case.keep(f=f)
    return md.retract_argument_check(f, flavor) == md.is_cofibration(f)


@prop("model", instances=ABELIAN)
def left_proper(case):
    r = case.rng
    a = gen.random_complex(case.instance, r, 2)
    w = gen.random_quasi_iso_from(a, r)
    i = gen.random_cofibration_from(a, r)
    case.keep(w=w, i=i)
    if not md.is_cofibration(i) or not weq(w):
        return False
    s, inj, _ = ch.complex_sum(i.dst, w.dst)
    _, q = ch.chain_cokernel(inj[0] @ i - inj[1] @ w)
    return weq(q @ inj[0])


@prop("model", instances=ABELIAN)
def right_proper(case):
    r = case.rng
    b = gen.random_complex(case.instance, r, 2)
    w = gen.random_quasi_iso_into(b, r)
    p = md.factor_triv_cof_fib(gen.random_map(case.instance, r, 2, b.lo if not b.is_zero() else 0,
                                              b.hi if not b.is_zero() else 1), md.CH_PLUS).right
    if p.dst != b:
        g = gen.random_chain_map(gen.random_complex(case.instance, r, 2), b, r)
        p = md.factor_triv_cof_fib(g, md.CH_PLUS).right
    case.keep(w=w, p=p)
    if not all(is_admissible_epi(p[n]) for n in p.degrees()) or not weq(w):
        return False
    s, _, proj = ch.complex_sum(p.src, w.src)
    k, inc = ch.chain_kernel(p @ proj[0] - w @ proj[1])
    return weq(proj[0] @ inc)


@prop("model")
def maps_from_contractible_projective_to_acyclic_are_null(case):
    r = case.rng
    x = gen.random_acyclic(case.instance, r, projective=True)
    y = gen.random_acyclic(case.instance, r)
    f = gen.random_chain_map(x, y, r)
    case.keep(f=f)
    return ch.null_homotopy_witness(f) is not None


# ---------------------------------------------------------------------------
# monoidal
# ---------------------------------------------------------------------------

@prop("monoidal", instances=TENSOR)
def pushout_product_of_generators(case):
    r = case.rng
    gens = md.generating_cofibrations(case.instance, md.CH_GEQ0, 3)
    i, j = r.choice(gens), r.choice(gens)
    case.keep(i=i, j=j)
    return pushout_product_classifies(i, j)


def pushout_product_classifies(i, j) -> bool:
    flavor = md.CH_GEQ0
    box = mo.pushout_product(i, j)
    c = md.classify_map_model(box, flavor)
    trivial = md.classify_map_model(i, flavor).is_trivial_cofibration or \
        md.classify_map_model(j, flavor).is_trivial_cofibration
    if not c.is_cofibration:
        return False
    if trivial and not (c.is_trivial_cofibration and weq(box)):
        return False
    return True


def _flat_object(case):
    if case.instance is FGAB:
        return ab(case.rng.randint(1, 2))
    return vect(case.rng.randint(1, 2))


@prop("monoidal", instances=TENSOR)
def disk_on_flat_tensor_is_acyclic(case):
    r = case.rng
    d = ch.disk(r.randint(0, 2), _flat_object(case))
    x = gen.random_complex(case.instance, r)
    case.keep(x=x, d=d)
    t = mo.tensor_complexes(d, x).product
    return ch.is_acyclic(t) and ch.homology_vanishes(t)


@prop("monoidal", instances=TENSOR)
def flat_complex_dual_formulation(case):
    r = case.rng
    f = gen.random_complex(case.instance, r, 2)
    case.keep(f=f)
    degreewise = all(mo.is_flat_probe(f.obj(n)) for n in f.degrees())
    one = ch.ChainMap.identity(f)
    preserved = True
    for m, e in mo.default_ses_probes(case.instance):
        si = ch.ChainMap(ch.sphere(0, m.src), ch.sphere(0, m.dst), {0: m})
        se = ch.ChainMap(ch.sphere(0, e.src), ch.sphere(0, e.dst), {0: e})
        ti, te = mo.tensor_chain_maps(one, si), mo.tensor_chain_maps(one, se)
        if not all(is_short_exact(ti[n], te[n]) for n in ti.dst.degrees()):
            preserved = False
    return degreewise == preserved


@prop("monoidal", instances=TENSOR)
def unit_is_cofibrant_and_neutral(case):
    x = gen.random_complex(case.instance, case.rng)
    case.keep(x=x)
    u = mo.unit_complex(case.instance)
    if not md.is_cofibration(ch.ChainMap.zero(ch.zero_complex(case.instance), u)):
        return False
    return mo.tensor_complexes(u, x).product == x and mo.tensor_complexes(x, u).product == x


@prop("monoidal", instances=(FGAB,))
def cofibrations_are_pure(case):
    f = gen.random_cofibration_candidate(case.instance, case.rng)
    case.keep(f=f)
    if not md.is_cofibration(f):
        return None
    return mo.is_pure_probe(f)


# ---------------------------------------------------------------------------
# doldkan
# ---------------------------------------------------------------------------

def _dk_complex(case, level=5):
    r = case.rng
    hi = r.randint(1, level)
    return gen.random_complex(case.instance, r, 2, 0, hi)


@prop("doldkan")
def normalized_gamma_is_identity(case):
    c = _dk_complex(case)
    case.keep(c=c)
    level = max(c.hi, 1) if not c.is_zero() else 1
    return dk.check_equivalence(c, level)


@prop("doldkan")
def gamma_satisfies_simplicial_identities(case):
    c = _dk_complex(case, 4)
    case.keep(c=c)
    level = case.rng.randint(max(c.hi, 0), 5)
    a = dk.gamma(c, level)
    if not a.is_valid():
        return False
    return all(iso_invariants(a.objects[n]) == gamma_invariants_oracle(c, n) for n in range(level + 1))


def _prime_powers(d: int) -> list:
    out, p = [], 2
    while d > 1:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    return out


def iso_invariants(o) -> tuple:
    """Complete isomorphism invariants: dimensions, or free rank and the
    prime-power cyclic factors."""
    if o.instance is FGAB:
        return (o.free_rank, tuple(sorted(q for t in o.torsion for q in _prime_powers(t))))
    return (o.dim, o.sub_dim)


def gamma_invariants_oracle(c, n: int) -> tuple:
    """Invariants of ``⊕_p C_p^{C(n, p)}``, summed factor by factor."""
    first, factors = 0, []
    for p in range(n + 1):
        a, b = iso_invariants(c.obj(p))
        k = comb(n, p)
        first += k * a
        factors.append(b * k)  # repeats the factor tuple, or scales a dimension
    if c.instance is FGAB:
        return (first, tuple(sorted(q for f in factors for q in f)))
    return (first, sum(factors))


@prop("doldkan")
def gamma_of_normalization_recovers(case):
    r = case.rng
    c = gen.random_complex(case.instance, r, 2, 0, 3)
    level = 3
    a = dk.gamma(c, level)
    isos = [gen.random_automorphism(o, r)[0] for o in a.objects]
    b = dk.conjugate(a, isos)
    case.keep(b=b)
    return dk.check_counit(b)


@prop("doldkan", instance_free=True)
def monotone_surjection_counts(case):
    r = case.rng
    n = r.randint(0, 6)
    p = r.randint(0, n)
    got = [s.values for s in dk.enumerate_surjections(n, p)]
    brute = [t for t in product(range(p + 1), repeat=n + 1)
             if all(t[k] <= t[k + 1] for k in range(n)) and set(t) == set(range(p + 1))]
    return got == sorted(brute) and len(got) == comb(n, p)


@prop("doldkan")
def normalization_preserves_structure(case):
    r = case.rng
    x = gen.random_complex(case.instance, r, 2, 0, 2)
    y = gen.random_complex(case.instance, r, 2, 0, 2)
    f = gen.random_chain_map(x, y, r)
    case.keep(f=f)
    rep = dk.check_n_preserves_structure(dk.gamma_map(f, 3))
    return rep.consistent and rep.normalized_is_quasi_iso == ch.is_quasi_iso(f)


# ---------------------------------------------------------------------------
# freealg
# ---------------------------------------------------------------------------

def _q_d(case):
    return case.rng.randint(0, 3), case.rng.randint(0, 5)


@prop("freealg", instance_free=True)
def symmetric_section_is_right_inverse(case):
    q, d = _q_d(case)
    g = fa.symmetric_trunc(q, d)
    return fa.section_is_right_inverse(g) and g.dims == [fa.symmetric_dim(q, n) for n in range(d + 1)] \
        and all(fa.transposition_relations_vanish(q, n, g.projections[n]) for n in range(d + 1))


@prop("freealg", instance_free=True)
def lie_section_is_identity(case):
    q, d = _q_d(case)
    g = fa.free_lie_trunc(q, d)
    return fa.lie_section_identity(g) and g.dims == fa.lie_dims_by_brute_force(q, d)


@prop("freealg", instance_free=True)
def pbw_and_tensor_dimensions(case):
    q, d = _q_d(case)
    t = fa.tensor_algebra_trunc(q, d)
    return t.dims == [q ** n for n in range(d + 1)] and fa.pbw_dimension_check(q, d) \
        and fa.associativity_holds(q, min(d, 3))


@prop("freealg", instance_free=True)
def induced_maps_are_natural(case):
    r = case.rng
    q, w = r.randint(1, 3), r.randint(1, 3)
    n = r.randint(0, 3)
    a = _rat_matrix(r, w, q, 2)
    case.keep(a=_as_mor(a))
    return fa.symmetric_naturality(a, n) and fa.tensor_power_map(a, n).shape == (w ** n, q ** n)
