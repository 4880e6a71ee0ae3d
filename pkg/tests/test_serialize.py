import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import hocat.doldkan as dk
from hocat.cli import generators as gen
from hocat.cli.serialize import WorkspaceError, dumps, load, loads, save, workspace_of
from hocat.excat import FGAB, FILTQ, VECTQ, ab, filt


def random_workspace(inst, seed):
    return workspace_of(
        inst,
        o=gen.random_object(inst, seed, 3),
        f=gen.random_morphism(inst, seed + 1),
        x=gen.random_complex(inst, seed + 2),
        g=gen.random_map(inst, seed + 3),
        s=dk.gamma(gen.random_complex(inst, seed + 4, budget=2, lo=0, hi=1), 2),
    )


@pytest.mark.parametrize("inst", [VECTQ, FILTQ, FGAB])
def test_round_trip_is_byte_identical(inst):
    for seed in range(0, 200 * 5, 5):
        ws = random_workspace(inst, seed)
        text = dumps(ws)
        back = loads(text)
        assert dumps(back) == text
        assert back.complexes["x"] == ws.complexes["x"] and back.chain_maps["g"] == ws.chain_maps["g"]


def test_save_and_load(tmp_path):
    ws = workspace_of(FILTQ, v=filt(3, [[1, 2, 0], [0, 1, "1/2"]]))
    save(ws, tmp_path / "w.json")
    assert load(tmp_path / "w.json").objects["v"] == ws.objects["v"]


def test_rationals_are_strings():
    raw = json.loads(dumps(workspace_of(FILTQ, v=filt(2, [["1/3", 1]]))))
    col = raw["objects"]["v"]["subspace"][0]
    assert all(isinstance(x, str) for x in col)


def test_named_references_are_resolved():
    text = json.dumps({"instance": "FGAB", "objects": {"z": {"free_rank": 1}},
                       "morphisms": {"two": {"src": "z", "dst": "z", "matrix": [[2]]}}})
    ws = loads(text)
    assert ws.morphisms["two"].src == ab(1)


@pytest.mark.parametrize("doc, message", [
    ({"instance": "NOPE"}, "unknown instance"),
    ({"instance": "VECTQ", "extra": {}}, "unknown top-level"),
    ({"instance": "VECTQ", "morphisms": {"f": {"src": {"dim": 1}, "dst": {"dim": 2}, "matrix": [["1"]]}}},
     "2x1"),
    ({"instance": "VECTQ", "morphisms": {"f": {"src": {"dim": 1}, "dst": {"dim": 1}, "matrix": [["1/0"]]}}},
     "malformed rational"),
    ({"instance": "FGAB", "objects": {"a": {"torsion": [6, 4]}}}, "divisibility"),
    ({"instance": "FILTQ", "objects": {"a": {"dim": 2, "subspace": [[1, 0], [2, 0]]}}}, "independent"),
])
def test_invalid_documents(doc, message):
    with pytest.raises(ValueError, match=message):
        loads(json.dumps(doc))


def test_not_json():
    with pytest.raises(WorkspaceError, match="line 1"):
        loads("{")


@given(st.integers(0, 10 ** 6), st.sampled_from([VECTQ, FILTQ, FGAB]))
def test_round_trip_property(seed, inst):
    text = dumps(random_workspace(inst, seed))
    assert dumps(loads(text)) == text


def test_minimal_sphere_file_loads():
    ws = loads('{"instance": "VECTQ", "complexes": {"s": {"objects": {"0": {"dim": 1}}}}}')
    s = ws.complexes["s"]
    assert (s.lo, s.hi) == (0, 0) and s.obj(0).dim == 1
