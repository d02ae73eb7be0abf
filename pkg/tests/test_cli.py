import json
from pathlib import Path

import pytest

from acfca import FinitePoset
from acfca.cli import main
from acfca.order import poset_to_json

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def morph_file(tmp_path, capsys):
    for name in ("chain2", "diamond"):
        code, _, _ = run(capsys, "rep", DATA / f"{name}.json", "-o", tmp_path / f"{name}_ctx.json")
        assert code == 0
    # chain concepts {bot} < {bot,top}; send them to the diamond's bottom and top
    code, out, _ = run(capsys, "morphism", "from-fn", "--source", tmp_path / "chain2_ctx.json",
                       "--target", tmp_path / "diamond_ctx.json", "--map", "0,3")
    assert code == 0
    path = tmp_path / "h.json"
    path.write_text(out)
    return path


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", DATA / "c0.cxt")
    assert code == 0 and "continuous concepts: 5" in out
    code, out, _ = run(capsys, "validate", DATA / "c0.json", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["valid"] and doc["concepts"] == 5


def test_validate_invalid(tmp_path, capsys):
    bad = {"objects": ["g"], "attributes": ["a", "b"], "incidence": [],
           "kernel": {"type": "table", "entries": [{"closed": [], "image": [0]},
                                                   {"closed": [0, 1], "image": [0, 1]}]},
           "selection": [[0]]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "validate", p, "--json")
    assert code == 1 and json.loads(out)["valid"] is False


def test_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "concepts", DATA / "diamond.json")
    assert code == 2
    code, _, _ = run(capsys, "example", "fig1", "--depth", "2")
    assert code == 2


def test_size_limit(tmp_path, capsys):
    p = tmp_path / "big.json"
    p.write_text(json.dumps(poset_to_json(FinitePoset.chain(17))))
    assert run(capsys, "rep", p)[0] == 3


def test_concepts_and_dot(tmp_path, capsys):
    dot = tmp_path / "c.dot"
    code, out, _ = run(capsys, "concepts", DATA / "c0.json", "--dot", dot)
    assert code == 0 and out.count("witnesses") == 5
    assert dot.read_text().startswith("digraph")
    doc = json.loads(run(capsys, "concepts", DATA / "c0.json", "--json")[1])
    assert len(doc["concepts"]) == 5


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", DATA / "c0.json")
    assert code == 0 and "topped                 True       True" in out
    doc = json.loads(run(capsys, "classify", DATA / "c0.json", "--json")[1])
    assert doc["pointed"]["passed"] is False


def test_rep_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "rep", DATA / "diamond.json", "-o", a)[0] == 0
    assert run(capsys, "rep", DATA / "diamond.json", "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(run(capsys, "rep", DATA / "diamond.json", "--json")[1])
    assert doc["verification"]["roundtrip"] is True
    assert len(doc["context"]["selection"]) == 13


def test_morphism_commands(morph_file, capsys):
    code, out, _ = run(capsys, "morphism", "validate", morph_file)
    assert code == 0 and "valid: True" in out
    code, out, _ = run(capsys, "morphism", "validate", morph_file, "--exhaustive", "--json")
    assert code == 0 and json.loads(out)["AR5"] is True
    doc = json.loads(run(capsys, "morphism", "to-fn", morph_file, "--json")[1])
    assert doc["mapping"] == [0, 3]
    code, out, _ = run(capsys, "morphism", "apply", morph_file, "--set", "0,1")
    assert code == 0 and out.strip().endswith("{bot,a,b,top}")
    assert run(capsys, "morphism", "apply", morph_file, "--set", "zz")[0] == 2


def test_morphism_compose(tmp_path, capsys):
    run(capsys, "rep", DATA / "chain2.json", "-o", tmp_path / "c.json")
    code, out, _ = run(capsys, "morphism", "from-fn", "--source", tmp_path / "c.json",
                       "--target", tmp_path / "c.json", "--map", "0,1")
    ident = tmp_path / "id.json"
    ident.write_text(out)
    code, out, _ = run(capsys, "morphism", "compose", ident, ident)
    assert code == 0
    composed = json.loads(out)
    assert composed["pairs"] == json.loads(ident.read_text())["pairs"]


def test_from_fn_rejects_non_monotone(tmp_path, capsys):
    run(capsys, "rep", DATA / "chain2.json", "-o", tmp_path / "c.json")
    code, _, _ = run(capsys, "morphism", "from-fn", "--source", tmp_path / "c.json",
                     "--target", tmp_path / "c.json", "--map", "1,0")
    assert code == 2


def test_example(capsys):
    code, out, _ = run(capsys, "example", "fig1", "--depth", "6")
    assert code == 0 and "not continuous" in out
    doc = json.loads(run(capsys, "example", "fig1", "--family", "L2", "--json")[1])
    assert doc["example"]["passed"] and doc["example"]["closure_extra"] == ["top1"]


def test_verify_suite_small(capsys):
    code, out, _ = run(capsys, "verify-suite", "--checks", "basic,symbolic", "--count", "10")
    assert code == 0
    assert out.splitlines() == [l for l in out.splitlines() if l.startswith("PASS")]
    assert len(out.splitlines()) == 2


def test_missing_command(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
