"""``hocat`` command line.

Every verb reads its inputs from a workspace file (see
:mod:`hocat.cli.serialize`) by name, prints a result as text or JSON, and can
write any values it produced to a new workspace with ``--save``.  Exit status
is 0 on success, 1 when a checked invariant fails (including a failing suite)
and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .. import chain as ch
from .. import doldkan as dk
from .. import freealg as fa
from .. import model as md
from .. import monoidal as mo
from ..excat import CategoryError, InstanceId, Mor, Obj, classify
from ..resolve import CellBudgetExceeded, ext_group, resolve_complex
from . import generators as gen
from . import harness
from .serialize import Workspace, WorkspaceError, load, save, to_dict

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
FLAVORS = {"plus": md.CH_PLUS, "geq0": md.CH_GEQ0}


class InputError(Exception):
    pass


class Result:
    """What a verb produced: summary fields, optional new values, status."""

    def __init__(self, verb: str, instance: Optional[InstanceId] = None):
        self.verb = verb
        self.fields = {}
        self.ws = Workspace(instance) if instance is not None else None
        self.ok = True
        self.text_lines = []

    def put(self, key, value, text: Optional[str] = None):
        self.fields[key] = value
        self.text_lines.append(text if text is not None else f"{key}: {_plain(value)}")

    def render(self, output: str) -> str:
        if output == "json":
            body = {"verb": self.verb, "ok": self.ok, "result": self.fields}
            if self.ws is not None:
                body["values"] = to_dict(self.ws)
            return json.dumps(body, indent=1, sort_keys=True)
        return "\n".join(self.text_lines)


def _plain(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    return v


def default_seed() -> int:
    env = os.environ.get("HOCAT_SEED")
    if env is None:
        return 1
    try:
        return int(env)
    except ValueError:
        raise InputError(f"HOCAT_SEED must be an integer, got {env!r}") from None


def _instance(name: str) -> InstanceId:
    try:
        return InstanceId(name.upper())
    except ValueError:
        raise InputError(f"unknown instance {name!r}") from None


def _load(path: str) -> Workspace:
    try:
        return load(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _lookup(ws: Workspace, name: str, *sections: str):
    for s in sections:
        table = getattr(ws, s)
        if name in table:
            return table[name]
    raise InputError(f"no {' or '.join(s.rstrip('s').replace('_', ' ') for s in sections)} named {name!r}")


def _homology_text(x: ch.Complex) -> str:
    if x.is_zero():
        return "0"
    return ", ".join(f"H_{n} = {ch.homology(x, n).obj}" for n in x.degrees())


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_check(a) -> Result:
    inst = None if a.instance in (None, "all") else _instance(a.instance)
    report = harness.run(a.suite, inst, a.cases, a.seed)
    res = Result("check")
    res.ok = report.ok
    res.fields = report.body()
    if a.timing:
        res.fields["elapsed_seconds"] = round(report.elapsed, 3)
    res.text_lines = [report.to_text(a.timing)]
    return res


def cmd_acceptance(a) -> Result:
    from .acceptance import run_acceptance

    results = run_acceptance(a.seed, a.only)
    res = Result("acceptance")
    res.ok = all(r.ok for r in results)
    res.fields = {"seed": a.seed, "criteria": [
        {"number": r.number, "title": r.title, "ok": r.ok, "checks": r.checks,
         "failures": [f.as_dict() for f in r.failures], "notes": r.notes} for r in results]}
    res.text_lines = [r.line() for r in results]
    return res


def cmd_classify(a) -> Result:
    ws = _load(a.file)
    v = _lookup(ws, a.name, "morphisms", "chain_maps", "complexes")
    res = Result("classify")
    if isinstance(v, Mor):
        c = classify(v)
        for key in ("is_mono", "is_epi", "is_admissible_mono", "is_admissible_epi",
                    "is_weakly_admissible", "is_admissible"):
            res.put(key, getattr(c, key))
        res.put("coimage_image_iso", c.coimage_image_iso)
        res.put("kernel", str(c.kernel.obj))
        res.put("cokernel", str(c.cokernel.obj))
    elif isinstance(v, ch.ChainMap):
        c = md.classify_map_model(v, FLAVORS[a.flavor])
        res.put("flavor", a.flavor)
        for key in ("is_weak_equivalence", "is_fibration", "is_cofibration",
                    "is_trivial_fibration", "is_trivial_cofibration"):
            res.put(key, getattr(c, key))
        res.put("is_null_homotopic", ch.is_null_homotopic(v))
    else:
        res.put("is_acyclic", ch.is_acyclic(v))
        res.put("is_split_exact", ch.is_split_exact(v))
        res.put("is_degreewise_projective", ch.is_degreewise_projective(v))
        if v.instance.is_abelian:
            res.put("homology", {str(n): str(ch.homology(v, n).obj) for n in v.degrees()},
                    "homology: " + _homology_text(v))
    return res


def cmd_cone(a) -> Result:
    ws = _load(a.file)
    f = _lookup(ws, a.name, "chain_maps")
    c = ch.cone(f)
    res = Result("cone", ws.instance)
    res.ws.complexes["cone"] = c.complex
    res.ws.chain_maps.update(tau=c.tau, pi=c.pi)
    res.put("cone", repr(c.complex))
    res.put("is_acyclic", ch.is_acyclic(c.complex))
    return res


def cmd_factorize(a) -> Result:
    ws = _load(a.file)
    f = _lookup(ws, a.name, "chain_maps")
    flavor = FLAVORS[a.flavor]
    if a.kind == "trivcof-fib":
        w = md.factor_triv_cof_fib(f, flavor)
    else:
        w = md.factor_cof_triv_fib(f, flavor, a.cell_budget)
    res = Result("factorize", ws.instance)
    res.ws.complexes["middle"] = w.middle
    res.ws.chain_maps.update(left=w.left, right=w.right)
    res.put("kind", a.kind)
    res.put("flavor", a.flavor)
    res.put("middle", repr(w.middle))
    res.put("composes", w.composite() == f)
    res.ok = res.fields["composes"]
    return res


def cmd_lift(a) -> Result:
    ws = _load(a.file)
    p = md.LiftingProblem(*(_lookup(ws, n, "chain_maps") for n in (a.top, a.bottom, a.left, a.right)))
    res = Result("lift", ws.instance)
    try:
        w = md.solve_lifting(p, FLAVORS[a.flavor])
    except md.NoLift as e:
        res.ok = False
        res.put("lift", None, f"no lift: {e}")
        return res
    res.ws.chain_maps["diagonal"] = w.diagonal
    res.put("lift", "found", "lift: found (saved as 'diagonal')")
    return res


def cmd_resolve(a) -> Result:
    ws = _load(a.file)
    v = _lookup(ws, a.name, "complexes", "objects")
    x = ch.sphere(0, v) if isinstance(v, Obj) else v
    r = resolve_complex(x, a.cell_budget)
    res = Result("resolve", ws.instance)
    res.ws.complexes["resolvent"] = r.resolvent
    res.ws.chain_maps["resolution"] = r.map
    res.put("resolvent", repr(r.resolvent))
    res.put("verified", r.verify())
    res.ok = res.fields["verified"]
    return res


def cmd_ext(a) -> Result:
    ws = _load(a.file)
    x, y = (_lookup(ws, n, "objects") for n in (a.a, a.b))
    e = ext_group(a.n, x, y)
    res = Result("ext", ws.instance)
    res.ws.objects["ext"] = e
    res.put("ext", str(e), f"Ext^{a.n}({x}, {y}) = {e}")
    return res


def cmd_dk_n(a) -> Result:
    ws = _load(a.file)
    s = _lookup(ws, a.name, "simplicial")
    c = dk.normalize(s)
    res = Result("dk-n", ws.instance)
    res.ws.complexes["normalized"] = c
    res.put("normalized", repr(c))
    return res


def cmd_dk_gamma(a) -> Result:
    ws = _load(a.file)
    c = _lookup(ws, a.name, "complexes")
    level = a.level if a.level is not None else max(c.hi, 0) if not c.is_zero() else 0
    s = dk.gamma(c, level)
    res = Result("dk-gamma", ws.instance)
    res.ws.simplicial["gamma"] = s
    res.put("level", level)
    res.put("objects", [str(o) for o in s.objects], "objects: " + ", ".join(str(o) for o in s.objects))
    res.put("simplicial_identities", s.is_valid())
    res.ok = res.fields["simplicial_identities"]
    return res


def cmd_tensor(a) -> Result:
    ws = _load(a.file)
    x, y = (_lookup(ws, n, "complexes") for n in (a.x, a.y))
    t = mo.tensor_complexes(x, y).product
    res = Result("tensor", ws.instance)
    res.ws.complexes["tensor"] = t
    res.put("tensor", repr(t))
    return res


def cmd_freealg(a) -> Result:
    if a.q < 0 or a.d < 0:
        raise InputError("--q and --d must be nonnegative")
    s = fa.symmetric_trunc(a.q, a.d)
    lie = fa.free_lie_trunc(a.q, a.d)
    t = fa.tensor_algebra_trunc(a.q, a.d)
    res = Result("freealg")
    res.put("tensor_dims", t.dims)
    res.put("symmetric_dims", s.dims)
    res.put("lie_dims", lie.dims)
    checks = {
        "symmetric_section_right_inverse": fa.section_is_right_inverse(s),
        "lie_section_identity": fa.lie_section_identity(lie),
        "pbw_dimensions": fa.pbw_dimension_check(a.q, a.d),
    }
    for k, v in checks.items():
        res.put(k, v)
    res.ok = all(checks.values())
    return res


def cmd_random(a) -> Result:
    inst = _instance(a.instance or "VECTQ")
    rng = gen.as_rng(a.seed)
    res = Result("random", inst)
    if a.kind == "object":
        v = gen.random_object(inst, rng, max(a.budget, 0))
        res.ws.objects["x"] = v
    elif a.kind == "morphism":
        v = gen.random_morphism(inst, rng, max(a.budget, 0))
        res.ws.morphisms["f"] = v
    elif a.kind == "complex":
        v = gen.random_complex(inst, rng, a.budget)
        res.ws.complexes["x"] = v
    elif a.kind == "chain-map":
        v = gen.random_map(inst, rng, a.budget)
        res.ws.chain_maps["f"] = v
    else:
        c = gen.random_complex(inst, rng, a.budget, 0, 2)
        level = max(c.hi, 0) if not c.is_zero() else 0
        v = dk.gamma(c, level)
        res.ws.simplicial["a"] = v
    res.put(a.kind, repr(v))
    return res


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help="VECTQ, FILTQ, FGAB (or 'all' for check)")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $HOCAT_SEED or 1)")
    common.add_argument("--cases", type=int, default=20, help="cases per property")
    common.add_argument("--cell-budget", type=int, default=None, help="cell attachment bound")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--save", metavar="PATH", help="write produced values to a workspace file")

    ap = argparse.ArgumentParser(prog="hocat", description="Exact homological algebra over small exact categories.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = verb("check", cmd_check, "run property suites")
    p.add_argument("suite", choices=harness.SUITES)
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit timing from the report")
    p = verb("acceptance", cmd_acceptance, "run the acceptance criteria")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    p = verb("classify", cmd_classify, "classify a morphism, chain map or complex")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("--flavor", choices=FLAVORS, default="plus")
    p = verb("cone", cmd_cone, "mapping cone of a chain map")
    p.add_argument("file")
    p.add_argument("name")
    p = verb("factorize", cmd_factorize, "model factorization of a chain map")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("--kind", choices=("trivcof-fib", "cof-trivfib"), required=True)
    p.add_argument("--flavor", choices=FLAVORS, default="plus")
    p = verb("lift", cmd_lift, "solve a lifting square")
    p.add_argument("file")
    for side in ("top", "bottom", "left", "right"):
        p.add_argument(f"--{side}", default=side, help=f"chain map name (default '{side}')")
    p.add_argument("--flavor", choices=FLAVORS, default="plus")
    p = verb("resolve", cmd_resolve, "projective resolution of an object or complex")
    p.add_argument("file")
    p.add_argument("name")
    p = verb("ext", cmd_ext, "Ext^n(a, b)")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--n", type=int, default=1)
    p = verb("dk-n", cmd_dk_n, "normalized chains of a simplicial object")
    p.add_argument("file")
    p.add_argument("name")
    p = verb("dk-gamma", cmd_dk_gamma, "Dold-Kan inverse of a nonnegative complex")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("--level", type=int, default=None)
    p = verb("tensor", cmd_tensor, "tensor product of two complexes")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")
    p = verb("freealg", cmd_freealg, "truncated tensor, symmetric and Lie algebras")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p = verb("random", cmd_random, "random values for experiments")
    p.add_argument("kind", choices=("object", "morphism", "complex", "chain-map", "simplicial"))
    p.add_argument("--budget", type=int, default=3)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        if a.seed is None:
            a.seed = default_seed()
        if a.cases < 0:
            raise InputError("--cases must be nonnegative")
        res = a.fn(a)
    except (InputError, WorkspaceError) as e:
        print(f"hocat {a.verb}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (CategoryError, CellBudgetExceeded, ValueError) as e:
        print(f"hocat {a.verb}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        # an internal postcondition failed
        print(f"hocat {a.verb}: invariant failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    print(res.render(a.output))
    if a.save:
        if res.ws is None:
            print(f"hocat {a.verb}: nothing to save", file=sys.stderr)
            return EXIT_INPUT
        save(res.ws, a.save)
    return EXIT_OK if res.ok else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
