import json

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_tate.characters import characters_of_level
from padic_tate.cli import main
from padic_tate.errors import ParseError
from padic_tate.fourier import fourier
from padic_tate.jsonio import (character_from_json, character_to_json, function_from_json,
                               function_to_json, rat_from_json, rat_to_json)
from padic_tate.stepfun import StepFunction
from padic_tate.zeta import named_family

from conftest import K32, Q3, each_config, step_functions


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def write(tmp_path, obj, name="f.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def unit_ball(P):
    return StepFunction.indicator(P, P.K.zero, 0)


def test_transform_of_unit_ball(capsys, tmp_path):
    path = write(tmp_path, function_to_json(unit_ball(Q3)))
    code, out = run(capsys, "transform", path)
    assert code == 0
    assert function_from_json(Q3, json.loads(out)) == fourier(unit_ball(Q3))
    code, out = run(capsys, "transform", path, "--roundtrip", "--text")
    assert code == 0 and out.strip() == "roundtrip: pass"


def test_transform_to_file_over_ramified_field(capsys, tmp_path):
    f = StepFunction.indicator(K32, K32.K.pi, 2, 3)
    src = write(tmp_path, function_to_json(f))
    dst = tmp_path / "out.json"
    code, out = run(capsys, "--ell", "3", "--ram-e", "2", "--nroot", "3", "transform", src, "--out", str(dst))
    assert code == 0 and out == ""
    assert function_from_json(K32, json.loads(dst.read_text())) == fourier(f)
    code, _ = run(capsys, "transform", str(dst), "--ram-e", "2", "--nroot", "3", "--inverse", "--out", str(dst))
    assert function_from_json(K32, json.loads(dst.read_text())) == f


def test_parse_errors(capsys, tmp_path):
    code, out = run(capsys, "transform", write(tmp_path, "{not json"))
    assert code == 2 and json.loads(out)["error"] == "parse"
    code, out = run(capsys, "transform", write(tmp_path, {"terms": [{"rep": 3}]}))
    assert code == 2 and json.loads(out)["error"] == "parse"
    code, out = run(capsys, "transform", str(tmp_path / "missing.json"))
    assert code == 2 and json.loads(out)["error"] == "parse"


def test_rho_command(capsys):
    code, out = run(capsys, "rho", "--conductor", "0")
    data = json.loads(out)
    assert code == 0 and data["equal"] is True
    assert data["closed"]["text"] == "(-λ^-1 + 1)/(1 - 1/3*λ)"
    code, out = run(capsys, "rho", "--conductor", "2", "--char-index", "3")
    assert code == 0 and json.loads(out)["level"] == 2


def test_zeta_command(capsys, tmp_path):
    code, out = run(capsys, "zeta", "--family", "h_n", "--n", "2", "--conductor", "2")
    data = json.loads(out)
    assert code == 0
    assert data["text"] == "1/9"
    code, out = run(capsys, "zeta", "--family", "h_n", "--n", "2", "--conductor", "2", "--lambda", "5")
    assert code == 0
    code, out = run(capsys, "zeta", write(tmp_path, function_to_json(unit_ball(Q3))))
    assert code == 2 and json.loads(out)["error"] == "support_contains_zero"
    code, out = run(capsys, "zeta", "--family", "g_alpha", "--alpha", "3")
    assert code == 2 and json.loads(out)["error"] == "bad_parameter"
    code, out = run(capsys, "zeta", "--family", "G_bracket", "--alpha", "5", "--text")
    assert code == 0 and out.startswith("Z = ")
    code, out = run(capsys, "zeta", "--family", "h_n")
    assert code == 2


def test_char_index_out_of_range(capsys):
    code, out = run(capsys, "rho", "--conductor", "1", "--char-index", "7")
    assert code == 2 and json.loads(out)["error"] == "bad_parameter"


def test_verify_is_deterministic(capsys):
    args = ("verify", "fe", "--cases", "3", "--seed", "11", "--json")
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["ok"] and len(data["results"]) == 3
    code, out = run(capsys, "verify", "gauss")
    assert code == 0 and out.strip().endswith("all passed")


def test_info(capsys):
    code, out = run(capsys, "info", "--ell", "2", "--ram-e", "3")
    data = json.loads(out)
    assert code == 0 and data["padic"]["d"] == 4
    code, out = run(capsys, "--ell", "2", "--ram-e", "3", "info")
    assert json.loads(out)["padic"]["d"] == 4


def test_rational_json():
    for r in (Fraction(0), Fraction(-3, 7), Fraction(5)):
        assert rat_from_json(rat_to_json(r)) == r
    assert rat_from_json("2") == 2
    with pytest.raises(ParseError):
        rat_from_json("x/y")


@each_config
@given(data=st.data())
def test_function_json_roundtrip(P, data):
    f = data.draw(step_functions(P))
    assert function_from_json(P, json.loads(json.dumps(function_to_json(f)))) == f


@each_config
def test_shell_and_character_json_roundtrip(P):
    G = named_family(P, "G_bracket", alpha=P.p)
    assert function_from_json(P, json.loads(json.dumps(function_to_json(G)))) == G
    for level in (0, 2):
        for chi in characters_of_level(P, level)[:3]:
            assert character_from_json(P, json.loads(json.dumps(character_to_json(chi)))) == chi
