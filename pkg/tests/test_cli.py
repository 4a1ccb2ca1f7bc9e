import json
import subprocess
import sys

import pytest

from osp_shuffle.bases import dual_canonical, dual_pbw
from osp_shuffle.cartan import Weight, datum
from osp_shuffle.cli import main, run_selftest
from osp_shuffle.repcheck import cuspidal_module, dump_module, load_module
from osp_shuffle.scalar import parse_scalar
from osp_shuffle.shuffle import Element, algebra


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_shuffle_example(capsys):
    code, out, _ = run(capsys, "shuffle", "-n", "2", "(2)", "(1)")
    assert code == 0
    assert out.strip() == "(1,2) + q^2 (2,1)"


def test_kappa_example(capsys):
    code, out, _ = run(capsys, "kappa", "-n", "2", "(2,2)")
    assert code == 0
    assert out.strip() == "-q + q^-1"


def test_roots_table(capsys):
    code, out, _ = run(capsys, "roots", "-n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [r["weight"] for r in payload["reduced"]] == [[1, 0], [1, 1], [0, 1], [1, 2]]
    assert sorted(payload["all"]) == sorted([[1, 0], [0, 1], [1, 1], [1, 2], [0, 2], [2, 2]])
    assert sorted(payload["odd"]) == [[0, 1], [1, 1]]
    assert sorted(payload["even"]) == sorted([[1, 0], [1, 2], [0, 2], [2, 2]])
    code, text, _ = run(capsys, "roots", "-n", "2")
    assert "reduced positive roots (4)" in text and "full positive roots (6)" in text


@pytest.mark.parametrize("argv, token", [
    (["shuffle", "-n", "2", "(3)", "(1)"], "3"),
    (["shuffle", "-n", "2", "(1,x)", "(1)"], "(1,x)"),
    (["dominant", "-n", "2", "--weight", "[1,a]"], "a"),
    (["dominant", "-n", "2", "--weight", "[1,2,3]"], "[1,2,3]"),
    (["kappa", "-n", "2", "(1,1,2)"], "(1,1,2)"),
    (["cuspidal", "-n", "2", "gamma(1,2)"], "gamma(1,2)"),
    (["cuspidal", "-n", "2", "beta(2,2)"], "beta(2,2)"),
    (["roots", "-n", "0"], "0"),
    (["verify", "/nonexistent/module.json"], "/nonexistent/module.json"),
    (["frobnicate"], "frobnicate"),
])
def test_malformed_input_exit_code(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert token in err


def test_verify_exit_codes(capsys, tmp_path):
    dat = datum(3)
    good = tmp_path / "good.json"
    good.write_text(json.dumps(dump_module(cuspidal_module(dat, dat.beta(1, 2)))))
    code, out, _ = run(capsys, "verify", "-n", "3", str(good))
    assert code == 0 and out.startswith("PASS")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(dump_module(cuspidal_module(dat, dat.beta(1, 2)).with_tau_entry(3, 1, 0, 2))))
    code, out, _ = run(capsys, "verify", "-n", "3", "--format", "json", str(bad))
    assert code == 1
    payload = json.loads(out)
    assert not payload["ok"]
    assert {v["relation"] for v in payload["violations"]} == {"7", "8"}
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "verify", str(broken))[0] == 2


def test_cuspidal_output_round_trips(capsys, tmp_path):
    target = tmp_path / "m.json"
    code, _, _ = run(capsys, "cuspidal", "-n", "3", "beta(1,3)", "--format", "json", "--output", str(target))
    assert code == 0
    m = load_module(target.read_text())
    assert dump_module(m) == dump_module(cuspidal_module(datum(3), datum(3).beta(1, 3)))


def test_shuffle_json_round_trip(capsys):
    code, out, _ = run(capsys, "shuffle", "-n", "2", "(1,2)", "(2)", "--format", "json")
    assert code == 0
    back = Element.from_json(json.loads(out))
    assert back == algebra(2).shuffle(Element.word((1, 2)), Element.word((2,)))


def test_dual_canonical_json_round_trip(capsys):
    code, out, _ = run(capsys, "dual-canonical", "-n", "2", "--weight", "[2,2]", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    basis = dual_canonical(datum(2), Weight((2, 2)))
    assert [tuple(item["word"]) for item in payload["basis"]] == basis.words
    for item in payload["basis"]:
        w = tuple(item["word"])
        assert Element.from_json(item["dual_canonical"]) == basis[w]
        assert Element.from_json(item["dual_pbw"]) == dual_pbw(datum(2), w)
        for g in item["gamma"]:
            assert parse_scalar(g["coeff"]) == basis.gamma[w][tuple(g["word"])]


def test_gram_json(capsys):
    code, out, _ = run(capsys, "gram", "-n", "2", "--weight", "[1,1]", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    words, mat = algebra(2).gram(Weight((1, 1)))
    assert payload["basis"] == [list(w) for w in words]
    assert [[parse_scalar(c) for c in row] for row in payload["matrix"]] == mat


@pytest.mark.parametrize("argv", [
    ["dual-canonical", "-n", "2", "--weight", "[2,2]"],
    ["pbw", "-n", "3", "--weight", "[1,1,1]", "--format", "json"],
    ["lyndon", "-n", "4"],
    ["standard-char", "-n", "2", "(2,2,1)"],
    ["dominant", "-n", "3", "--weight", "[1,2,2]"],
])
def test_output_is_byte_stable(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first == second


def test_output_is_stable_across_processes():
    argv = [sys.executable, "-m", "osp_shuffle.cli", "dual-pbw", "-n", "2", "--weight", "[1,2]"]
    a = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert a == b and "(1,2,2)" in a


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("OSP_SHUFFLE_CACHE_DIR", str(tmp_path))
    first = run(capsys, "dominant", "-n", "2", "--weight", "[1,2]")
    assert len(list(tmp_path.iterdir())) == 1
    assert run(capsys, "dominant", "-n", "2", "--weight", "[1,2]") == first


def test_selftest(capsys):
    results = run_selftest(2, 4)
    assert results and all(ok for _, ok, _ in results)
    code, out, _ = run(capsys, "selftest", "-n", "2", "--max-height", "3")
    assert code == 0
    assert out.count("PASS") == len(results)
