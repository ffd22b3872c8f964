import json
import subprocess
import sys

import pytest

from liarlab.cli import main
from liarlab.codec import encode
from liarlab.kernel import derive_liar_contradiction
from liarlab.syntax import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_quine(capsys):
    assert run(capsys, "quine", "--string", "ab#c") == (0, "ab'ab#c'c\n", "")
    assert run(capsys, "quine", "--string", "abc")[1] == "abc\n"
    code, out, _ = run(capsys, "quine", "--natural-liar")
    assert out.startswith("The string obtained by quining 'The string")


def test_diagonalize_json(capsys):
    code, data = run_json(capsys, "diagonalize")
    assert code == 0 and set(data) == {"n", "k", "liar", "fixed_point"}
    assert isinstance(data["n"], str) and isinstance(data["k"], str)
    assert data["liar"] == f"~T(Q(#{data['n']}))"
    assert data["fixed_point"] is True
    assert encode(parse(data["liar"])) == int(data["k"])
    # flag after the subcommand works too
    code, out, _ = run(capsys, "diagonalize", "--json")
    assert json.loads(out) == data


def test_parse_print_encode_decode(capsys, tmp_path):
    code, data = run_json(capsys, "parse", "S(S(0)) + S(S(0)) = #4")
    assert data["kind"] == "formula" and data["text"] == "(S(S(0)) + S(S(0))) = #4"
    tree_file = tmp_path / "tree.json"
    tree_file.write_text(json.dumps(data["tree"]))
    assert run(capsys, "print", str(tree_file))[1] == "(S(S(0)) + S(S(0))) = #4\n"

    assert run(capsys, "encode", "0 = 0")[1] == "562838\n"
    code, data = run_json(capsys, "encode", "#17")
    assert data["kind"] == "term" and data["code"] == str(encode(parse("#17")))
    assert run(capsys, "decode", "562838")[1] == "0 = 0\n"
    assert run(capsys, "decode", "562839") == (0, "not-a-code\n", "")
    assert run(capsys, "decode", "abc")[0] == 1


def test_prime_term(capsys):
    code, data = run_json(capsys, "prime-term", "--n", "7")
    assert data["branch"] == "prime" and data["sentence"] == "(S(S(0)) + S(S(0))) = #4"
    code, data = run_json(capsys, "prime-term", "--n", "4")
    assert data["branch"] == "composite" and data["sentence"] == "~T(F(#4))"


def test_eval(capsys):
    code, data = run_json(capsys, "eval", "--sentence", "forall x < #10. exists y < #10. (x + y) = #9")
    assert data == {"verdict": "TrueInN", "bound": "1000000"}
    code, data = run_json(capsys, "eval", "--sentence", "forall x. exists y. x < y", "--bound", "50")
    assert data == {"verdict": "Unknown", "reason": "quantifier-bound-exceeded", "bound": "50"}
    assert run(capsys, "eval", "--sentence", "0 = S(0)")[1] == "FalseInN\n"


def test_analyze(capsys):
    assert run(capsys, "analyze", "--sentence", "~T(F(#7))")[1] == "GroundedFalse\n"
    code, out, _ = run(capsys, "analyze", "--sentence", "~T(F(#6))", "--dot")
    assert out.startswith("Paradoxical\ndigraph references {")
    code, data = run_json(capsys, "analyze", "--sentence", "~T(F(#6))", "--budget", "5")
    assert data["verdict"] == "Paradoxical" and data["edges"][0]["polarity"] == "odd"


def test_derive_liar_then_check(capsys, tmp_path):
    code, out, _ = run(capsys, "derive-liar", "--json")
    path = tmp_path / "liar.json"
    path.write_text(out)
    assert run(capsys, "check", str(path), "--goal", "false")[1] == "valid\n"
    code, data = run_json(capsys, "check", str(path), "--disable-rule", "t-scheme")
    assert code == 1 and data["failing_step"] == 0
    code, data = run_json(capsys, "check", str(path), "--disable-rule", "term-substitution")
    assert code == 1 and data["failing_step"] == 2
    text = run(capsys, "derive-liar")[1].splitlines()
    assert len(text) == 5 and text[-1].startswith("4. false")


def test_check_broken_modus_ponens(capsys, tmp_path):
    doc = {"steps": [
        {"conclusion": "0 = 0", "rule": "eval-equality", "premises": [], "extra": {}},
        {"conclusion": "(0 = 0 -> 0 = 0)", "rule": "tautology", "premises": [], "extra": {}},
        {"conclusion": "0 = S(0)", "rule": "modus-ponens", "premises": [0, 1], "extra": {}},
    ]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1 and "step 2" in out
    code, data = run_json(capsys, "check", str(path))
    assert data["valid"] is False and data["failing_step"] == 2


def test_check_reads_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(derive_liar_contradiction().dumps()))
    assert run(capsys, "check", "-") == (0, "valid\n", "")


def test_enumerate(capsys):
    code, data = run_json(capsys, "enumerate", "--depth", "2")
    assert code == 0 and data["all_true"] and data["count"] == len(data["theorems"])
    assert "0 = S(0)" not in {t["text"] for t in data["theorems"]}
    code, data = run_json(capsys, "enumerate", "--depth", "4", "--max-formulas", "10")
    assert code == 1 and "error" in data


def test_selfcheck(capsys):
    code, data = run_json(capsys, "selfcheck", "codec", "--samples", "200")
    assert code == 0 and data["ok"] and data["samples"] == 200
    code, data = run_json(capsys, "selfcheck", "eval", "--samples", "100")
    assert code == 0 and data["failures"] == 0


def test_domain_errors_exit_1(capsys, tmp_path):
    code, out, err = run(capsys, "encode", "0 = ")
    assert code == 1 and "offset 4" in err
    code, data = run_json(capsys, "eval", "--sentence", "x = 0")
    assert code == 1 and "free" in data["error"]
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 1
    (tmp_path / "junk.json").write_text("{")
    assert run(capsys, "check", str(tmp_path / "junk.json"))[0] == 1


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["quine"], ["eval"], ["prime-term", "--n", "x"],
    ["check", "f.json", "--disable-rule", "nope"], ["eval", "--sentence", "0 = 0", "--bound", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert "usage:" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liarlab", "quine", "--string", "ab#c"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ab'ab#c'c\n"
    proc = subprocess.run([sys.executable, "-m", "liarlab"], capture_output=True, text=True)
    assert proc.returncode == 2
