import json

import pytest

import hocat.chain as ch
from hocat.cli.main import main
from hocat.cli.serialize import load, save, workspace_of
from hocat.exactlin import IntMatrix
from hocat.excat import FGAB, Mor, ab


@pytest.fixture
def z2_workspace(tmp_path):
    two = Mor(ab(1), ab(1), IntMatrix.from_rows([[2]]))
    x = ch.Complex(FGAB, {0: ab(1), 1: ab(1)}, {1: two})
    s = ch.sphere(0, ab(0, [2]))
    proj = ch.ChainMap(x, s, {0: Mor(ab(1), ab(0, [2]), IntMatrix.from_rows([[1]]))})
    zero = ch.ChainMap.zero(ch.zero_complex(FGAB), s)
    path = tmp_path / "ws.json"
    save(workspace_of(FGAB, a=ab(0, [2]), b=ab(1), c=ab(0, [4]), d=ab(0, [6]), x=x, s=s, proj=proj,
                      zero=zero, g=two), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ext(capsys, z2_workspace):
    code, out, _ = run(capsys, "ext", z2_workspace, "a", "b", "--n", 1)
    assert code == 0 and out.strip() == "Ext^1(Z/2, Z^1) = Z/2"
    code, out, _ = run(capsys, "ext", z2_workspace, "c", "d", "--output", "json")
    assert json.loads(out)["result"]["ext"] == "Z/2"


def test_classify_values(capsys, z2_workspace):
    code, out, _ = run(capsys, "classify", z2_workspace, "g", "--output", "json")
    r = json.loads(out)["result"]
    assert code == 0 and r["is_admissible_mono"] and not r["is_epi"] and r["cokernel"] == "Z/2"
    code, out, _ = run(capsys, "classify", z2_workspace, "proj", "--flavor", "geq0", "--output", "json")
    r = json.loads(out)["result"]
    assert r["is_weak_equivalence"] and r["is_trivial_fibration"]
    code, out, _ = run(capsys, "classify", z2_workspace, "x")
    assert "H_0 = Z/2" in out


def test_factorize_and_save(capsys, z2_workspace, tmp_path):
    out_path = tmp_path / "fact.json"
    code, out, _ = run(capsys, "factorize", z2_workspace, "zero", "--kind", "cof-trivfib",
                       "--flavor", "geq0", "--save", out_path)
    assert code == 0 and "composes: yes" in out
    ws = load(out_path)
    assert ws.chain_maps["right"] @ ws.chain_maps["left"] == load(z2_workspace).chain_maps["zero"]
    assert ch.is_quasi_iso(ws.chain_maps["right"])


def test_lift_with_default_names(capsys, tmp_path):
    g = ab(1)
    left = ch.ChainMap(ch.sphere(0, g), ch.disk(1, g), {0: Mor.identity(g)})
    right = ch.ChainMap.identity(ch.disk(1, g))
    top = ch.ChainMap(left.src, right.src, {0: Mor.identity(g)})
    bottom = ch.ChainMap.identity(ch.disk(1, g))
    path = tmp_path / "sq.json"
    save(workspace_of(FGAB, top=top, bottom=bottom, left=left, right=right), path)
    code, out, _ = run(capsys, "lift", path, "--save", tmp_path / "d.json")
    assert code == 0 and "found" in out
    assert load(tmp_path / "d.json").chain_maps["diagonal"] == bottom


def test_resolve_and_cone(capsys, z2_workspace):
    code, out, _ = run(capsys, "resolve", z2_workspace, "a")
    assert code == 0 and "verified: yes" in out
    code, out, _ = run(capsys, "cone", z2_workspace, "proj")
    assert code == 0 and "is_acyclic: yes" in out


def test_dold_kan_verbs(capsys, z2_workspace, tmp_path):
    p = tmp_path / "g.json"
    code, out, _ = run(capsys, "dk-gamma", z2_workspace, "x", "--level", 3, "--save", p)
    assert code == 0 and "simplicial_identities: yes" in out
    code, out, _ = run(capsys, "dk-n", p, "gamma", "--output", "json")
    n = load_json_complex(out)
    assert n == "Complex<FGAB 0:Z^1, 1:Z^1>"


def load_json_complex(out):
    return json.loads(out)["result"]["normalized"]


def test_tensor_and_freealg(capsys, z2_workspace):
    code, out, _ = run(capsys, "tensor", z2_workspace, "x", "x")
    assert code == 0 and "2:Z^1" in out
    code, out, _ = run(capsys, "freealg", "--q", 2, "--d", 4, "--output", "json")
    r = json.loads(out)["result"]
    assert r["lie_dims"] == [0, 2, 1, 2, 3] and r["symmetric_dims"] == [1, 2, 3, 4, 5]


def test_check_is_deterministic_without_timing(capsys):
    args = ("check", "chain", "--instance", "FGAB", "--cases", 5, "--seed", 3, "--no-timing", "--output", "json")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first[0] == 0 and first[1] == second[1]


def test_random_values_are_reproducible(capsys, tmp_path):
    for kind in ("object", "morphism", "complex", "chain-map", "simplicial"):
        a = run(capsys, "random", kind, "--instance", "FILTQ", "--seed", 9, "--output", "json")
        b = run(capsys, "random", kind, "--instance", "FILTQ", "--seed", 9, "--output", "json")
        assert a[0] == 0 and a[1] == b[1]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HOCAT_SEED", "17")
    a = run(capsys, "random", "complex", "--instance", "FGAB")
    b = run(capsys, "random", "complex", "--instance", "FGAB", "--seed", 17)
    assert a[1] == b[1]


@pytest.mark.parametrize("argv, message", [
    (["ext", "{ws}", "a", "nope"], "no object named 'nope'"),
    (["ext", "{missing}", "a", "b"], ""),
    (["freealg", "--q", "-1", "--d", "2"], "nonnegative"),
    (["resolve", "{ws}", "a", "--cell-budget", "0"], "CellBudgetExceeded"),
])
def test_input_errors_exit_2(capsys, z2_workspace, tmp_path, argv, message):
    argv = [a.format(ws=z2_workspace, missing=tmp_path / "missing.json") for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and message in err


def test_malformed_workspace_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"instance": "FGAB",\n "objects": {"a": }}')
    code, _, err = run(capsys, "ext", p, "a", "a")
    assert code == 2 and "line 2" in err


def test_torsion_chain_violation_rejected(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"instance": "FGAB", "objects": {"a": {"free_rank": 0, "torsion": [4, 2]}}}))
    code, _, err = run(capsys, "ext", p, "a", "a")
    assert code == 2 and "divisibility" in err


def test_non_square_zero_complex_rejected(capsys, tmp_path):
    p = tmp_path / "bad.json"
    one = [["1"]]
    p.write_text(json.dumps({"instance": "VECTQ", "complexes": {"x": {
        "objects": {"0": {"dim": 1}, "1": {"dim": 1}, "2": {"dim": 1}},
        "differentials": {"1": one, "2": one}}}}))
    code, _, err = run(capsys, "classify", p, "x")
    assert code == 2 and "d_1" in err


def test_ill_posed_lift_exits_2(capsys, tmp_path):
    # the right map 0: S^0(Z) -> S^0(Z) is neither a fibration nor a weak equivalence
    g = ab(1)
    s = ch.sphere(0, g)
    left = ch.ChainMap.zero(ch.zero_complex(FGAB), s)
    path = tmp_path / "sq.json"
    save(workspace_of(FGAB, top=ch.ChainMap.zero(left.src, s), bottom=ch.ChainMap.zero(s, s), left=left,
                      right=ch.ChainMap.zero(s, s)), path)
    code, _, err = run(capsys, "lift", path, "--flavor", "plus")
    assert code == 2 and "not well posed" in err


def test_failing_suite_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(ch, "cone", lambda f: _real_cone(ch.ChainMap.zero(f.src, f.dst)))
    code, out, _ = run(capsys, "check", "chain", "--instance", "VECTQ", "--cases", 10)
    assert code == 1 and "FAIL" in out.upper()


_real_cone = ch.cone


def test_python_dash_m_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "hocat", "freealg", "--q", "1", "--d", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "lie_dims" in out.stdout
