import json
from pathlib import Path

import pytest

from expecta.cli import main
from expecta.documents import load_model, model_doc
from expecta.errors import InputError, ModelValidationError
from expecta.logic import holds, parse

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if code == 0 and out.out.strip().startswith("{") else out)


def test_eval_credal(capsys):
    code, out = run(capsys, "eval", "--model", str(DATA / "credal_p1.json"), "--gamble", "1*p + 1*q")
    assert code == 0 and out["lower"] == "2/3" and out["upper"] == "5/3"


def test_eval_formula(capsys):
    code, out = run(capsys, "eval", "--model", str(DATA / "credal_p1.json"), "--formula", "2*E(p + q) > 1")
    assert code == 0 and out == {"holds": True}


@pytest.mark.parametrize("semantics,formula", [
    ("lowerprob", "2*E(p + q) > 1"),
    ("belief", "E(p|q) >= 1 & E(p) <= 0 & E(q) <= 0"),
    ("possibility", "E(p) >= 1 & E(!p) >= 1"),
    ("prob", "E(p) > 1/3 & E(q) < 1/2"),
])
def test_sat_witness_round_trip(capsys, tmp_path, semantics, formula):
    code, out = run(capsys, "sat", "--semantics", semantics, formula)
    assert code == 0 and out["result"] == "SAT"
    path = tmp_path / "w.json"
    path.write_text(json.dumps(out["witness"]))
    code, back = run(capsys, "eval", "--model", str(path), "--formula", formula)
    assert code == 0 and back == {"holds": True}


def test_valid_and_gamble_sat(capsys):
    assert run(capsys, "valid", "--semantics", "prob", "E(true) = 1")[1] == {"result": "VALID"}
    code, out = run(capsys, "valid", "--semantics", "belief", "E(p) + E(!p) = 1")
    assert out["result"] == "INVALID" and "countermodel" in out
    assert run(capsys, "gamble-sat", "!(p >= 0)")[1] == {"result": "UNSAT"}


def test_func_sat(capsys):
    code, out = run(capsys, "func-sat", "!(v <= 0) & !(v >= 0)")
    assert out["result"] == "SAT" and len(out["witness"]["v"]) == 2
    code, out = run(capsys, "func-sat", "--reals", "!(v <= 0) & !(v >= 0)")
    assert out == {"result": "UNSAT"}


def test_coherence_commands(capsys):
    code, out = run(capsys, "coherent", "--assessment", str(DATA / "assessment.json"))
    assert out == {"result": "COHERENT"}
    code, out = run(capsys, "extend", "--assessment", str(DATA / "assessment.json"), "--gamble", "1*p")
    assert out == {"lower": "1/8"}


def test_translate(capsys):
    assert run(capsys, "translate", "--form", "t1", "E(2*p + 3*q) >= 1")[1]["formula"] == \
        "2*E(1*p) + 3*E(1*q) >= 1"
    assert run(capsys, "translate", "--form", "t2", "E(p + q) >= 1")[1]["formula"] == \
        "1*E(1*(p | q)) + 1*E(1*(p & q)) >= 1"
    assert run(capsys, "translate", "--form", "qu", "--language", "qu", "L(p) >= 1/2")[1]["formula"] == \
        "1*E(1*p) >= 1/2"
    assert run(capsys, "translate", "--form", "qu", "E(p) >= 1/2")[1]["formula"] == "1*L(p) >= 1/2"


def test_validate_model(capsys):
    code, out = run(capsys, "validate-model", "--model", str(DATA / "bad_mass.json"))
    assert code == 0 and out["valid"] is False and out["violations"][0]["axiom"] == "B2"
    code, out = run(capsys, "validate-model", "--model", str(DATA / "credal_p1.json"))
    assert out == {"valid": True, "violations": []}


def test_corpus_file(capsys, tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("# two formulas\nE(p) >= 1 & E(!p) >= 1\nE(p) >= 0\n")
    code, out = run(capsys, "sat", "--file", str(corpus))
    assert [r["result"] for r in out["results"]] == ["UNSAT", "SAT"]
    assert out["results"][0]["formula"] == "E(p) >= 1 & E(!p) >= 1"


def test_dump_and_oracle(capsys, tmp_path):
    dump = tmp_path / "lp.txt"
    code, out = run(capsys, "sat", "--semantics", "belief", "--oracle", "--dump-lp", str(dump),
                    "E(p) > 1/2 & E(q) >= 1/3")
    assert code == 0
    assert "> 1/2" in dump.read_text()
    code, out = run(capsys, "eval", "--oracle", "--model", str(DATA / "credal_p1.json"), "--gamble", "p")
    assert code == 0


def test_text_format(capsys):
    code = main(["--format", "text", "valid", "E(true) = 1"])
    assert code == 0 and capsys.readouterr().out.strip() == "result: VALID"


@pytest.mark.parametrize("argv", [
    ["sat", "E(p) >"],
    ["sat", "E(a) + E(b) + E(c) + E(d) + E(e) >= 0"],
    ["sat", "--max-clauses", "1", "E(p) >= 1 | E(q) >= 1"],
    ["eval", "--model", "/nonexistent.json", "--gamble", "p"],
    ["sat", "--semantics", "upper", "E(p) >= 0"],
    ["sat"],
])
def test_input_errors_exit_1(capsys, argv):
    assert main(argv) == 1


def test_invariant_breach_exits_2(capsys, monkeypatch):
    import expecta.cli as cli
    from expecta.errors import InvariantBreach

    def boom(*a, **k):
        raise InvariantBreach("forced")
    monkeypatch.setattr(cli, "sat", boom)
    assert main(["sat", "E(p) >= 0"]) == 2


def test_documents_round_trip():
    doc = json.loads((DATA / "credal_p1.json").read_text())
    model = load_model(doc)
    again = load_model(model_doc(model))
    assert model_doc(again) == model_doc(model)
    assert holds(parse("2*E(p + q) > 1"), again)
    with pytest.raises(ModelValidationError):
        load_model(json.loads((DATA / "bad_mass.json").read_text()))
    doc["measure"]["measures"][0]["w1"] = 0.5
    with pytest.raises(InputError):
        load_model(doc)
