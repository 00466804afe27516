import json

import pytest

from digicov.cli import main
from digicov.morphism import DigitalMap, witness_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, capsys):
    wrap = tmp_path / "wrap-l4.json"
    cover = tmp_path / "double-cover.json"
    assert run(capsys, "gen", "wrap", "--curve", "sc8-2-4", "--window-end", "12", "--out", str(wrap))[0] == 0
    assert run(capsys, "gen", "cover", "--big", "sc8-2-8", "--small", "sc8-2-4", "--out", str(cover))[0] == 0
    bad = tmp_path / "malformed.json"
    bad.write_text('{"source": ')
    return {"wrap": wrap, "cover": cover, "bad": bad}


def test_check_exit_codes(files, capsys):
    assert run(capsys, "check", "covering", str(files["cover"]))[0] == 0
    code, out, _ = run(capsys, "check", "pseudo-original", str(files["wrap"]))
    assert code == 1
    assert '"b": [0, -1]' in out and '"e": [0]' in out
    assert run(capsys, "check", "covering", str(files["bad"]))[0] == 2
    assert run(capsys, "check", "--predicate", "covering", "--map", str(files["cover"]))[0] == 0
    assert run(capsys, "check", "nonsense", str(files["cover"]))[0] == 2
    assert run(capsys, "check", "covering", str(files["wrap"]) + ".missing")[0] == 2


def test_check_json_round_trip(files, capsys):
    code, out, _ = run(capsys, "check", "pseudo-original", str(files["wrap"]), "--json")
    report = json.loads(out)
    assert code == 1 and report["holds"] is False
    p = DigitalMap.from_dict(json.loads(files["wrap"].read_text()))
    w = witness_from_dict(report["witness"])
    assert w.certifies(p)
    assert w.to_dict() == report["witness"]
    x3 = [row for row in report["per_base"] if row["b"] == [0, -1]][0]
    assert x3["cond1"] is False and x3["equality38"] is False


def test_check_subset_search(files, capsys):
    code, out, _ = run(capsys, "check", "pseudo-original", str(files["wrap"]), "--subset-search", "--json")
    assert code == 1 and json.loads(out)["witness"]["reason"] == "no-index-set"
    assert run(capsys, "check", "covering", str(files["cover"]), "--subset-search")[0] == 2


def test_dimension_mismatch_is_input_error(files, capsys):
    data = json.loads(files["cover"].read_text())
    data["pairs"][0][1] = [0, 0, 0]
    files["bad"].write_text(json.dumps(data))
    assert run(capsys, "check", "covering", str(files["bad"]))[0] == 2


def test_gen_is_deterministic(tmp_path, capsys):
    a = run(capsys, "gen", "wrap", "--curve", "sc8-2-4", "--window-end", "12")[1]
    b = run(capsys, "gen", "wrap", "--curve", "sc8-2-4", "--window-end", "12")[1]
    assert a == b
    code, out, _ = run(capsys, "gen", "scc", "--name", "sc8-2-8")
    assert code == 0 and len(json.loads(out)["points"]) == 8
    assert run(capsys, "gen", "wrap", "--curve", "sc8-2-4", "--window-end", "2")[0] == 2
    code, out, _ = run(capsys, "gen", "interval", "--end", "3")
    assert json.loads(out)["points"] == [[0], [1], [2], [3]]
    assert run(capsys, "gen", "cover", "--big", "sc8-2-8", "--small", "sc26-3-5")[0] == 2


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", str(files["wrap"]), "--json")
    assert code == 0
    assert json.loads(out)["flags"]["pseudo-revised"] is True


@pytest.mark.parametrize("result", ["remark-3-1", "prop-3-9", "corollary", "theorem-1", "summary"])
def test_repro(result, capsys):
    code, out, _ = run(capsys, "repro", result)
    assert code == 0, out
    assert "FAILED" not in out


def test_falsify(capsys):
    code, out, _ = run(capsys, "falsify", "wl-surjection", "pseudo-original")
    assert code == 1 and json.loads(out)["counterexamples"]
    assert run(capsys, "falsify", "covering", "pseudo-revised")[0] == 0
    code, out, _ = run(capsys, "falsify", "pseudo-revised", "covering", "--limit", "1")
    data = json.loads(out)
    assert code == 1 and len(data["counterexamples"]) == 1
    ce = data["counterexamples"][0]
    p = DigitalMap.from_dict(ce)
    assert witness_from_dict(ce["failing"]["witness"]).certifies(p)
    assert run(capsys, "falsify", "covering", "pseudo-revised", "--ceiling", "100")[0] == 2


def test_ceiling_env(monkeypatch, capsys):
    monkeypatch.setenv("DIGICOV_CEILING", "50")
    assert run(capsys, "falsify", "covering", "pseudo-revised")[0] == 2


@pytest.mark.parametrize("argv", [["bogus"], ["check", "--nope"], [], ["falsify", "covering", "nonsense"]])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
