from __future__ import annotations

import json

import pytest

from orblab.cli import main
from orblab.instance import read_json, write_json

import oracles


@pytest.fixture
def corpus(tmp_path):
    out = tmp_path / "corpus"
    assert main(["generate", "--n", "6", "--dist", "D_o", "uniform", "--seed", "2", "--count", "2", "--out", str(out)]) == 0
    return out


def test_generate(corpus):
    files = sorted(p.name for p in corpus.glob("*.json"))
    assert files == ["offcenter_6_0.json", "offcenter_6_1.json", "uniform_6_0.json", "uniform_6_1.json"]
    assert read_json(corpus / files[0]).n == 6


@pytest.mark.parametrize("solver", ["heuristic", "exact_bb"])
@pytest.mark.parametrize("style", ["SL", "OR"])
def test_solve_and_render(tmp_path, corpus, solver, style):
    inst = corpus / "offcenter_6_0.json"
    lab, svg = tmp_path / "l.json", tmp_path / "a.svg"
    args = ["solve", "--style", style, "--solver", solver, "--in", str(inst), "--out-labeling", str(lab), "--out-svg", str(svg)]
    assert main(args) == 0
    d = json.loads(lab.read_text())
    assert set(d) == {"style", "order", "ports", "tll"} and d["style"] == style
    again = tmp_path / "b.svg"
    assert main(["render", "--in", str(inst), "--labeling", str(lab), "--out", str(again)]) == 0
    assert again.read_bytes() == svg.read_bytes()


def test_solve_uniform_needs_equal_widths(tmp_path, corpus, capsys):
    assert main(["solve", "--solver", "uniform_exact", "--in", str(corpus / "uniform_6_0.json")]) == 2


def test_solve_reports_infeasible(tmp_path, capsys):
    path = tmp_path / "adv.json"
    write_json(oracles.adversarial_two_feature(), path)
    assert main(["solve", "--style", "SL", "--solver", "exact_bb", "--in", str(path)]) == 1
    assert "infeasible" in capsys.readouterr().err
    assert main(["solve", "--style", "SL", "--solver", "heuristic", "--in", str(path)]) == 1
    assert main(["solve", "--style", "OR", "--solver", "exact_bb", "--in", str(path)]) == 0


def test_export_model(tmp_path, corpus):
    out = tmp_path / "m.txt"
    assert main(["export-model", "--family", "sl-qip", "--in", str(corpus / "uniform_6_1.json"), "--out", str(out)]) == 0
    assert out.read_text().startswith("# family: sl-qip")


def test_bench(tmp_path, corpus, capsys):
    out = tmp_path / "b.csv"
    args = ["bench", "--corpus", str(corpus), "--styles", "OR", "--solvers", "heuristic", "exact_bb", "--repeats", "1", "--csv", str(out)]
    assert main(args) == 0
    assert len(out.read_text().splitlines()) == 1 + 4 * 2
    assert "exact_bb" in capsys.readouterr().out


def test_bad_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["solve", "--in", str(bad)]) == 2
    assert main(["solve", "--in", str(tmp_path / "missing.json")]) == 2
