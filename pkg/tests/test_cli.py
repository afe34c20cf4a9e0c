import json

import pytest

from bjtool.cli import main

E1 = {"field": {"type": "fp", "p": 7}, "n": 3, "s": [0, 1], "t": [0, 1], "mode": "affine"}
E2 = {"field": {"type": "fp", "p": 7}, "n": 3, "s": [4], "t": [2, 0, 1], "mode": "affine"}
WORKED_QUINTIC = {"field": {"type": "q"},
                  "sigma": {"sigma2": ["3/10"], "sigma3": ["1/150"], "sigma4": ["21/2000"], "sigma5": ["-427/75000"]}}


def _run(tmp_path, capsys, command, problem, *extra):
    path = tmp_path / "problem.json"
    path.write_text(problem if isinstance(problem, str) else json.dumps(problem))
    code = main([command, "--input", str(path), *extra])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_worked_cubic(tmp_path, capsys):
    code, rep = _run(tmp_path, capsys, "analyze", E1)
    assert code == 0 and rep["exit_code"] == 0
    assert rep["schema"] == "bjtool-report/1"
    dec = rep["decomposition"]
    assert dec["text"]["c1"] == "x + 5"
    assert dec["c_unit"] == 4
    assert dec["a_parts"]["1"]["text"] == "x"


def test_galois_second_example(tmp_path, capsys):
    code, rep = _run(tmp_path, capsys, "galois", E2)
    assert code == 0
    g = rep["galois"]
    assert g["criterion"] is False and g["oracle"] is False and g["agree"] is True


def test_characteristic_three_is_rejected(tmp_path, capsys):
    code, rep = _run(tmp_path, capsys, "analyze", {"field": {"type": "fp", "p": 3}, "n": 3, "s": [0, 1], "t": [0, 1]})
    assert code == 2 and rep["exit_code"] == 2
    assert rep["error"]["type"]


def test_malformed_json(tmp_path, capsys):
    code, rep = _run(tmp_path, capsys, "analyze", "{bad")
    assert code == 1 and rep["error"]


@pytest.mark.parametrize("field", [{"type": "fp"}, {"type": "zz"}, "fp"])
def test_bad_field_descriptor(tmp_path, capsys, field):
    code, _ = _run(tmp_path, capsys, "analyze", {"field": field, "n": 3, "s": [1], "t": [1]})
    assert code == 1


def test_factored_rational_input(tmp_path, capsys):
    prob = {"field": {"type": "q"}, "n": 3,
            "s": {"factored": {"unit": "-3", "factors": [[[0, 1], 2]]}}, "t": [1, 1]}
    code, rep = _run(tmp_path, capsys, "analyze", prob)
    assert code == 0
    assert rep["minimality"]["s"] == ["0", "0", "-3"]


def test_quintic_reduce_partial_report(tmp_path, capsys):
    code, rep = _run(tmp_path, capsys, "quintic-reduce", WORKED_QUINTIC)
    assert code == 3
    assert rep["error"]["type"] == "RadicalUnavailable"
    assert rep["partial"]["relations"] == {
        "u": "3/25*w - 1/250*p - 69/2500*q",
        "v": "11/30*w + 109/1500*p - 1463/9000*q",
        "p": "1/6*q",
    }


@pytest.mark.parametrize("command", ["closure", "ramify", "cover", "oracle"])
def test_commands_succeed_on_worked_cubic(tmp_path, capsys, command):
    code, rep = _run(tmp_path, capsys, command, E1, "--mode", "projective")
    assert code == 0 and rep["command"] == command


def test_same_seed_same_bytes(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(E2))
    outs = []
    for _ in range(2):
        out = tmp_path / f"r{len(outs)}.json"
        assert main(["cover", "--input", str(path), "--seed", "5", "--output", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_missing_input(capsys):
    assert main(["analyze"]) == 1
