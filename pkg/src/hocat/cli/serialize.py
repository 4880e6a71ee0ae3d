"""Workspace files: a JSON document holding named values of one instance.

Layout::

    {
      "instance": "VECTQ" | "FILTQ" | "FGAB",
      "objects":    {name: object},
      "morphisms":  {name: {"src": object, "dst": object, "matrix": rows}},
      "complexes":  {name: {"lo": int, "hi": int,
                            "objects": {degree: object},
                            "differentials": {degree: rows}}},
      "chain_maps": {name: {"src": complex, "dst": complex,
                            "components": {degree: rows}}},
      "simplicial": {name: {"level": L, "objects": [object, ...],
                            "faces": {"n,i": rows}, "degeneracies": {"n,i": rows}}}
    }

An object is ``{"dim": n}`` (VECTQ), ``{"dim": n, "subspace": [column, ...]}``
(FILTQ) or ``{"free_rank": r, "torsion": [d, ...]}`` (FGAB).  Wherever an
object or complex is expected, a string naming an entry of ``objects`` or
``complexes`` may be used instead.  Rational entries are written as
``"p/q"`` strings (``"3"`` for integers); FGAB entries are plain integers.
Missing differentials or components are zero.  ``save`` always writes
values inline with sorted keys, so ``save(load(save(ws)))`` is byte-identical
to ``save(ws)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..chain import ChainMap, Complex
from ..doldkan import SimplicialObject
from ..excat import FGAB, FILTQ, VECTQ, CategoryError, InstanceId, Mor, Obj, ab, filt, vect
from ..exactlin import IntMatrix, RatMatrix

SECTIONS = ("objects", "morphisms", "complexes", "chain_maps", "simplicial")


class WorkspaceError(ValueError):
    """Malformed or invalid workspace data."""


@dataclass
class Workspace:
    instance: InstanceId
    objects: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    chain_maps: dict = field(default_factory=dict)
    simplicial: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------

def _rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_matrix(m, inst: InstanceId) -> list:
    if inst is FGAB:
        return [[int(x) for x in row] for row in m.data]
    return [[_rat(x) for x in row] for row in m.data]


def encode_object(o: Obj) -> dict:
    if o.instance is VECTQ:
        return {"dim": o.dim}
    if o.instance is FILTQ:
        return {"dim": o.dim, "subspace": [[_rat(x) for x in col] for col in o.subspace.columns()]}
    return {"free_rank": o.free_rank, "torsion": list(o.torsion)}


def encode_mor(f: Mor) -> dict:
    return {"src": encode_object(f.src), "dst": encode_object(f.dst), "matrix": encode_matrix(f.matrix, f.instance)}


def encode_complex(c: Complex) -> dict:
    return {
        "lo": c.lo,
        "hi": c.hi,
        "objects": {str(n): encode_object(o) for n, o in sorted(c.objects.items())},
        "differentials": {str(n): encode_matrix(d.matrix, c.instance) for n, d in sorted(c.diffs.items())},
    }


def encode_chain_map(f: ChainMap) -> dict:
    return {
        "src": encode_complex(f.src),
        "dst": encode_complex(f.dst),
        "components": {str(n): encode_matrix(m.matrix, f.instance) for n, m in sorted(f.components.items())},
    }


def encode_simplicial(a: SimplicialObject) -> dict:
    return {
        "level": a.level,
        "objects": [encode_object(o) for o in a.objects],
        "faces": {f"{n},{i}": encode_matrix(m.matrix, a.instance) for (n, i), m in sorted(a.faces.items())},
        "degeneracies": {f"{n},{i}": encode_matrix(m.matrix, a.instance)
                         for (n, i), m in sorted(a.degeneracies.items())},
    }


def to_dict(ws: Workspace) -> dict:
    return {
        "instance": ws.instance.value,
        "objects": {k: encode_object(v) for k, v in ws.objects.items()},
        "morphisms": {k: encode_mor(v) for k, v in ws.morphisms.items()},
        "complexes": {k: encode_complex(v) for k, v in ws.complexes.items()},
        "chain_maps": {k: encode_chain_map(v) for k, v in ws.chain_maps.items()},
        "simplicial": {k: encode_simplicial(v) for k, v in ws.simplicial.items()},
    }


def dumps(ws: Workspace) -> str:
    return json.dumps(to_dict(ws), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def save(ws: Workspace, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(ws))


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------

class _Decoder:
    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise WorkspaceError("top level must be an object")
        unknown = set(raw) - set(SECTIONS) - {"instance"}
        if unknown:
            raise WorkspaceError(f"unknown top-level keys: {sorted(unknown)}")
        try:
            self.inst = InstanceId(raw.get("instance"))
        except ValueError:
            raise WorkspaceError(f"instance: unknown instance {raw.get('instance')!r}") from None
        self.raw = raw
        self.ws = Workspace(self.inst)

    def entry(self, x, want: type):
        if want is int:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise WorkspaceError(f"expected an integer, got {x!r}")
            try:
                return int(x)
            except ValueError:
                raise WorkspaceError(f"expected an integer, got {x!r}") from None
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise WorkspaceError(f"expected a rational, got {x!r}")
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise WorkspaceError(f"malformed rational {x!r}") from None

    def matrix(self, rows, nrows: int, ncols: int):
        if not isinstance(rows, list) or len(rows) != nrows or any(
                not isinstance(r, list) or len(r) != ncols for r in rows):
            raise WorkspaceError(f"expected a {nrows}x{ncols} matrix")
        if self.inst is FGAB:
            return IntMatrix(nrows, ncols, [[self.entry(x, int) for x in r] for r in rows])
        return RatMatrix(nrows, ncols, [[self.entry(x, Fraction) for x in r] for r in rows])

    def obj(self, spec) -> Obj:
        if isinstance(spec, str):
            if spec not in self.ws.objects:
                raise WorkspaceError(f"unknown object {spec!r}")
            return self.ws.objects[spec]
        if not isinstance(spec, dict):
            raise WorkspaceError(f"malformed object {spec!r}")
        if self.inst is FGAB:
            tors = spec.get("torsion", [])
            if not isinstance(tors, list):
                raise WorkspaceError("torsion must be a list")
            return ab(self.entry(spec.get("free_rank", 0), int), [self.entry(t, int) for t in tors])
        n = self.entry(spec.get("dim", 0), int)
        if self.inst is VECTQ:
            return vect(n)
        cols = spec.get("subspace", [])
        if not isinstance(cols, list) or any(not isinstance(c, list) or len(c) != n for c in cols):
            raise WorkspaceError("subspace must be a list of columns of length dim")
        return filt(n, [[self.entry(x, Fraction) for x in c] for c in cols])

    def mor(self, spec) -> Mor:
        src, dst = self.obj(spec["src"]), self.obj(spec["dst"])
        return Mor(src, dst, self.matrix(spec["matrix"], dst.size, src.size))

    def complex(self, spec) -> Complex:
        if isinstance(spec, str):
            if spec not in self.ws.complexes:
                raise WorkspaceError(f"unknown complex {spec!r}")
            return self.ws.complexes[spec]
        objs = {self.entry(n, int): self.obj(o) for n, o in spec.get("objects", {}).items()}
        lo, hi = spec.get("lo"), spec.get("hi")
        if lo is not None and hi is not None:
            for n, o in objs.items():
                if not o.is_zero() and not self.entry(lo, int) <= n <= self.entry(hi, int):
                    raise WorkspaceError(f"degree {n} lies outside [lo, hi]")

        def at(n):
            return objs.get(n) or _zero(self.inst)

        diffs = {}
        for n, rows in spec.get("differentials", {}).items():
            n = self.entry(n, int)
            diffs[n] = Mor(at(n), at(n - 1), self.matrix(rows, at(n - 1).size, at(n).size))
        return Complex(self.inst, objs, diffs)

    def chain_map(self, spec) -> ChainMap:
        src, dst = self.complex(spec["src"]), self.complex(spec["dst"])
        comps = {}
        for n, rows in spec.get("components", {}).items():
            n = self.entry(n, int)
            comps[n] = Mor(src.obj(n), dst.obj(n), self.matrix(rows, dst.obj(n).size, src.obj(n).size))
        return ChainMap(src, dst, comps)

    def simplicial(self, spec) -> SimplicialObject:
        level = self.entry(spec["level"], int)
        objs = [self.obj(o) for o in spec["objects"]]
        a = SimplicialObject(self.inst, level, objs)
        if len(objs) != level + 1:
            raise WorkspaceError("simplicial object needs level + 1 objects")
        for key, table in (("faces", a.faces), ("degeneracies", a.degeneracies)):
            for k, rows in spec.get(key, {}).items():
                try:
                    n, i = (int(t) for t in k.split(","))
                except ValueError:
                    raise WorkspaceError(f"malformed index {k!r}") from None
                tgt = n - 1 if key == "faces" else n + 1
                if not (0 <= n <= level and 0 <= tgt <= level):
                    raise WorkspaceError(f"index {k!r} is outside the level range")
                table[(n, i)] = Mor(objs[n], objs[tgt], self.matrix(rows, objs[tgt].size, objs[n].size))
        a.check_shape()
        bad = a.identity_violations()
        if bad:
            raise WorkspaceError(f"simplicial identities fail: {', '.join(bad[:5])}")
        return a

    def run(self) -> Workspace:
        readers = (("objects", self.obj), ("morphisms", self.mor), ("complexes", self.complex),
                   ("chain_maps", self.chain_map), ("simplicial", self.simplicial))
        for section, reader in readers:
            entries = self.raw.get(section, {})
            if not isinstance(entries, dict):
                raise WorkspaceError(f"{section} must be an object")
            target = getattr(self.ws, section)
            for name, spec in entries.items():
                try:
                    target[name] = reader(spec)
                except WorkspaceError as e:
                    raise WorkspaceError(f"{section}.{name}: {e}") from None
                except (CategoryError, KeyError, TypeError, AttributeError) as e:
                    msg = f"missing key {e}" if isinstance(e, KeyError) else str(e)
                    raise WorkspaceError(f"{section}.{name}: {msg}") from None
        return self.ws


def _zero(inst):
    from ..excat import zero_object
    return zero_object(inst)


def loads(text: str) -> Workspace:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return _Decoder(raw).run()


def load(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def workspace_of(instance: InstanceId, **values: Any) -> Workspace:
    """Sort loose values into a workspace by type (used for reproductions)."""
    ws = Workspace(instance)
    for name, v in values.items():
        if isinstance(v, Obj):
            ws.objects[name] = v
        elif isinstance(v, Mor):
            ws.morphisms[name] = v
        elif isinstance(v, Complex):
            ws.complexes[name] = v
        elif isinstance(v, ChainMap):
            ws.chain_maps[name] = v
        elif isinstance(v, SimplicialObject):
            ws.simplicial[name] = v
    return ws
