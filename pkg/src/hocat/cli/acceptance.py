"""The acceptance criteria, each run at its stated size.

Every criterion reduces to harness properties (randomized, replayable) or to
exhaustive/frozen checks, and yields one :class:`CriterionResult`.  Counts
stated "per instance" run on every applicable instance; other counts are
spread round-robin over the applicable instances.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass, field
from itertools import product
from math import comb, gcd
from typing import Callable, Optional

from .. import doldkan as dk
from .. import freealg as fa
from .. import model as md
from ..excat import ab, is_projective
from ..resolve import ext_group
from . import generators as gen
from .harness import (ABELIAN, INSTANCES, PROPERTIES, TENSOR, Failure, Report, case_seed,
                      pushout_product_classifies, run_property)

DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.checks > 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        return (f"{status} {self.number:2d}  {self.title}: {self.checks} checks, "
                f"{len(self.failures)} failures{extra} [{self.elapsed:.1f}s]")


class _Runner:
    """Collects harness runs into one criterion result."""

    def __init__(self, result: CriterionResult, seed: int):
        self.result = result
        self.seed = seed

    def per_instance(self, name: str, count: int, instances=None, flavor=None):
        p = PROPERTIES[name]
        for inst in instances or p.instances:
            self._run(p, inst, count, flavor)

    def spread(self, name: str, total: int, instances=None, flavor=None):
        p = PROPERTIES[name]
        insts = list(instances or p.instances)
        for k, inst in enumerate(insts):
            share = total // len(insts) + (1 if k < total % len(insts) else 0)
            self._run(p, inst, share, flavor)

    def _run(self, p, inst, count, flavor):
        rep = Report(p.suite, inst.value, count, self.seed)
        run_property(p, inst, count, self.seed, rep, flavor)
        for passed, vacuous in rep.checks.values():
            self.result.checks += passed
            if vacuous:
                self.result.notes.append(f"{vacuous} vacuous in {p.name}[{inst.value}]")
        self.result.failures.extend(rep.failures)

    def check(self, label: str, ok: bool, detail: str = ""):
        self.result.checks += 1
        if not ok:
            self.result.failures.append(Failure(0, label, "", detail))


def _criterion(number: int, title: str):
    def wrap(fn: Callable[[_Runner], None]):
        def run(seed: int) -> CriterionResult:
            res = CriterionResult(number, title)
            start = time.perf_counter()
            try:
                fn(_Runner(res, seed))
            except Exception as e:  # noqa: BLE001 - reported as a failure
                res.failures.append(Failure(0, title, "", f"{type(e).__name__}: {e}"))
            res.elapsed = time.perf_counter() - start
            return res
        run.number = number
        run.title = title
        CRITERIA.append(run)
        return run
    return wrap


CRITERIA: list = []


@_criterion(1, "admissibility calculus")
def _admissibility(r: _Runner):
    r.per_instance("admissible_iff_factorization", 1000)
    r.per_instance("iso_iff_admissible_mono_and_epi", 1000)
    r.per_instance("filtered_strictness_dual_oracle", 1000)


@_criterion(2, "acyclicity tri-oracle")
def _acyclicity(r: _Runner):
    r.spread("acyclicity_oracles_agree", 1000)


@_criterion(3, "homotopy dual oracle")
def _homotopy(r: _Runner):
    r.per_instance("null_homotopy_dual_oracle", 500)


@_criterion(4, "quasi-isomorphism calculus")
def _quasi_iso(r: _Runner):
    r.spread("homotopy_equivalence_is_quasi_iso", 200)
    r.per_instance("two_out_of_three", 500)
    r.spread("acyclic_kernel_iff_quotient_quasi_iso", 300)


@_criterion(5, "model factorizations")
def _factorizations(r: _Runner):
    for flavor in (md.CH_GEQ0, md.CH_PLUS):
        r.per_instance("trivial_cofibration_fibration_factorization", 300, flavor=flavor)
        r.per_instance("cofibration_trivial_fibration_factorization", 300, flavor=flavor)


@_criterion(6, "lifting and the retract argument")
def _lifting(r: _Runner):
    r.spread("lifting_nonnegative", 200)
    r.spread("lifting_bounded_below", 200)
    r.spread("retract_argument_matches_cofibration", 300)


@_criterion(7, "Ext values")
def _ext(r: _Runner):
    z2 = ab(0, [2])
    r.check("Ext^1(Z/2, Z) = Z/2", ext_group(1, ab(0, [2]), ab(1)) == z2)
    r.check("Ext^1(Z/4, Z/6) = Z/2", ext_group(1, ab(0, [4]), ab(0, [6])) == z2)
    # Ext^1(Z/a, Z/b) = Z/gcd(a, b) and Ext^1(Z/a, Z) = Z/a
    for a in range(2, 9):
        r.check(f"Ext^1(Z/{a}, Z)", ext_group(1, ab(0, [a]), ab(1)) == ab(0, [a]))
        for b in range(2, 9):
            g = gcd(a, b)
            want = ab(0, [g]) if g > 1 else ab()
            r.check(f"Ext^1(Z/{a}, Z/{b})", ext_group(1, ab(0, [a]), ab(0, [b])) == want)
    # projectives have no higher Ext, against random targets
    for inst in INSTANCES:
        for k in range(50):
            rng = case_seed(r.seed, f"ext-projective/{inst.value}", k)
            p = gen.random_object(inst, rng, 3, projective=True)
            b = gen.random_object(inst, rng + 1, 3)
            ok = is_projective(p) and all(ext_group(n, p, b).is_zero() for n in (1, 2))
            r.check(f"Ext^n({p}, {b}) = 0", ok)


@_criterion(8, "monoidality")
def _monoidal(r: _Runner):
    for inst in TENSOR:
        gens = md.generating_cofibrations(inst, md.CH_GEQ0, 3)
        for (a, i), (b, j) in product(enumerate(gens), repeat=2):
            r.check(f"box of generators {a}, {b} over {inst.value}", pushout_product_classifies(i, j))
    r.per_instance("disk_on_flat_tensor_is_acyclic", 100)


@_criterion(9, "Dold-Kan")
def _dold_kan(r: _Runner):
    r.per_instance("normalized_gamma_is_identity", 200)
    r.per_instance("gamma_satisfies_simplicial_identities", 200)
    for n in range(7):
        for p in range(n + 1):
            got = dk.enumerate_surjections(n, p)
            brute = [t for t in product(range(p + 1), repeat=n + 1)
                     if all(t[k] <= t[k + 1] for k in range(n)) and set(t) == set(range(p + 1))]
            r.check(f"surjections [{n}] -> [{p}]",
                    len(got) == comb(n, p) == len(brute) and sorted(s.values for s in got) == brute)


@_criterion(10, "free algebras")
def _free_algebras(r: _Runner):
    d = 5
    for q in range(4):
        s = fa.symmetric_trunc(q, d)
        r.check(f"pi rho = id, q={q}", fa.section_is_right_inverse(s))
        r.check(f"dim S_n, q={q}", s.dims == [comb(q + n - 1, n) if n else 1 for n in range(d + 1)])
        lie = fa.free_lie_trunc(q, d)
        r.check(f"Lie section, q={q}", fa.lie_section_identity(lie))
        r.check(f"Lie dims, q={q}", lie.dims == fa.lie_dims_by_brute_force(q, d))
        r.check(f"PBW, q={q}", fa.pbw_dimension_check(q, d))
        r.check(f"dim T_n, q={q}", fa.tensor_algebra_trunc(q, d).dims == [q ** n for n in range(d + 1)])


@_criterion(11, "left and right properness")
def _properness(r: _Runner):
    r.spread("left_proper", 200, instances=ABELIAN)
    r.spread("right_proper", 200, instances=ABELIAN)


def run_acceptance(seed: Optional[int] = None, only=None, stream=None) -> list:
    """Run the criteria (all, or the numbers in ``only``) and print one
    PASS/FAIL line each to ``stream`` as they finish."""
    if seed is None:
        seed = int(os.environ.get("HOCAT_SEED", DEFAULT_SEED))
    out = []
    for crit in CRITERIA:
        if only and crit.number not in only:
            continue
        res = crit(seed)
        out.append(res)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
            for f in res.failures[:5]:
                print(f"      {f.invariant} (case seed {f.seed}): {f.detail}", file=stream)
    return out


def main(argv=None) -> int:
    import argparse

    ap = argparse.ArgumentParser(description="Run the acceptance criteria.")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    args = ap.parse_args(argv)
    start = time.perf_counter()
    results = run_acceptance(args.seed, args.only, sys.stdout)
    ok = all(r.ok for r in results)
    print(f"{sum(r.ok for r in results)}/{len(results)} criteria passed in {time.perf_counter() - start:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
