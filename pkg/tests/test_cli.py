import json

import pytest

from lmw.cli import main
from lmw.proofs import corpus


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if isinstance(doc, dict) else doc, encoding="utf-8")
    return str(p)


NC = {"kind": "nc", "signature": ["p0", "p1"], "worlds": ["w"], "leq": [["w", "w"]],
      "valplus": {"p0": [], "p1": []}, "valminus": {"p0": [], "p1": []}, "rel": []}


def test_translate_box(capsys):
    assert main(["translate", "--map", "st-modal", "[]p0"]) == 0
    assert capsys.readouterr().out == "forall v1 . (E(v0,v1) -> p0(v1))\n"


def test_falsified_conditional_over_empty_accessor(tmp_path, capsys):
    f = write(tmp_path, "m.json", NC)
    assert main(["check", "--model", f, "--semantics", "nc", "--world", "w", "--polarity", "-", "p0 []> p1"]) == 1
    assert capsys.readouterr().out == "false\n"
    assert main(["check", "--model", f, "--semantics", "nc", "--world", "w", "p0 []> p1"]) == 0


def test_suite_persistence(capsys):
    assert main(["suite", "persistence"]) == 0
    assert "failures=0" in capsys.readouterr().out


def test_usage_errors():
    assert main([]) == 2
    assert main(["parse", "--lang", "xx", "p0"]) == 2
    assert main(["suite", "nope"]) == 2


def test_input_errors(tmp_path, capsys):
    assert main(["parse", "--lang", "cn", "p0 &"]) == 3
    assert main(["check", "--model", str(tmp_path / "missing.json"), "--semantics", "c", "p0(v0)"]) == 3
    f = write(tmp_path, "m.json", NC)
    assert main(["check", "--model", f, "--semantics", "ck", "--world", "w", "p0"]) == 3
    assert main(["search", "--semantics", "nc", "--delta", "p0", "--bounds", "worlds=0"]) == 3
    assert "lmw" in capsys.readouterr().err


def test_parse_prints_canonically(capsys):
    assert main(["parse", "--lang", "cn", "p0 & p1 -> p0"]) == 0
    assert capsys.readouterr().out == "((p0 & p1) -> p0)\n"


def test_gen_theory_lines(capsys):
    assert main(["gen-theory", "th-ck", "--props", "2"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 6  # four fixed sentences plus one per prop


def test_validate_model(tmp_path, capsys):
    assert main(["validate-model", write(tmp_path, "m.json", NC)]) == 0
    bad = dict(NC, worlds=["w", "v"], leq=[["w", "w"], ["v", "v"], ["w", "v"]],
               valplus={"p0": ["w"], "p1": []})
    assert main(["validate-model", write(tmp_path, "b.json", bad)]) == 1
    assert "violation" in capsys.readouterr().out


def test_bridge_round(tmp_path, capsys):
    src = write(tmp_path, "m.json", NC)
    out = tmp_path / "s.json"
    assert main(["bridge", "--from", src, "--construction", "sheafify", "--out", str(out)]) == 0
    assert main(["validate-model", str(out)]) == 0
    assert main(["bridge", "--from", str(out), "--construction", "sheaf-to-nc"]) == 0
    assert json.loads(capsys.readouterr().out.split("valid\n", 1)[1])["kind"] == "nc"


def test_prove_check(tmp_path, capsys):
    text = corpus()["identity"]
    assert main(["prove-check", write(tmp_path, "p.lmw", text)]) == 0
    broken = text.replace("5. (p0(v0) -> p0(v0)) ; mp(4,3)", "5. (p0(v0) -> p1(v0)) ; mp(4,3)")
    assert main(["prove-check", write(tmp_path, "q.lmw", broken)]) == 1
    assert capsys.readouterr().out.splitlines()[-1].startswith("rejected: line 5")
    assert main(["prove-check", "--system", "n4ck", write(tmp_path, "p.lmw", text)]) == 3


def test_search(capsys):
    assert main(["search", "--semantics", "nc", "--gamma", "p0 -> p1", "--delta", "~p1 -> ~p0"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("countermodel semantics=nc")
    assert json.loads(out.split("\n", 1)[1])["kind"] == "nc"
    assert main(["search", "--semantics", "nc", "--delta", "p0 []> (p1 -> p1)", "--bounds", "instances=50"]) == 0
    assert "no counterexample within bounds" in capsys.readouterr().out


@pytest.mark.parametrize("args", [["--help"], ["check", "--help"]])
def test_help_exits_cleanly(args, capsys):
    assert main(args) == 0
