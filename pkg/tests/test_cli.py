from __future__ import annotations

import io
import json
import re
import shutil
import subprocess
import sys

import jsonschema
import pytest

from refcrys.catalog import data_path
from refcrys.cli import json_schema, run

JSON_GROUPS = ["G(1,1,3)", "G(1,1,4)", "G(2,1,2)", "G(2,2,2)", "G(2,1,3)", "G(3,1,2)", "G(3,3,3)", "G(4,2,2)",
               "G(4,4,3)", "G(6,3,2)", "G(2,2,4)", "G(5,5,2)", "G4", "G5", "G6", "G8", "G12", "G13", "G23",
               "G25"]
COMMANDS = [["info"], ["regular"], ["kappa"], ["crystal"], ["crystal", "--subgroup", "sylow2"],
            ["torsion", "--order", "3"], ["kahler"], ["kahler", "--subgroup", "all-involutions"]]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(json_schema())


@pytest.mark.parametrize("group", JSON_GROUPS)
def test_json_validates(group):
    schema = json_schema()
    for cmd in COMMANDS:
        code, out, err = call("--format", "json", cmd[0], group, *cmd[1:])
        assert code == 0, (cmd, err)
        doc = json.loads(out)
        jsonschema.validate(doc, schema)
        assert doc["command"] == cmd[0]


def test_table1_json_validates():
    code, out, _ = call("table1", "--only", "G4,G34", "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), json_schema())


def numbers(text):
    return sorted(int(x) for x in re.findall(r"-?\d+", text))


def test_text_and_json_agree():
    for argv in (["regular", "G(3,1,2)"], ["kappa", "G(3,1,3)"], ["info", "G6"]):
        _, text, _ = call(*argv)
        _, js, _ = call("--format", "json", *argv)
        res = json.loads(js)["result"]
        if argv[0] == "regular":
            assert text.strip() == res["table"]
            assert numbers(text) == [d for d in res["regular"] if d != 1]
        elif argv[0] == "kappa":
            assert f"kappa = {res['kappa']}" in text
            for o in res["orbits"]:
                assert f"e_H = {o['e_H']}, f_H = {o['f_H']}" in text
        else:
            for key in ("order", "center_order", "hyperplanes", "quotient_order"):
                assert str(res[key]) in text


def test_regular_text_format():
    assert call("regular", "G(1,1,7)")[1].strip() == "2, (3), 6, (7)"


def test_crystal_text():
    code, out, _ = call("crystal", "G4")
    assert code == 0
    assert "dimension: 4" in out and "A4" in out and "regular-prime-criterion" in out


def test_generator_subgroups():
    code, out, _ = call("--format", "json", "crystal", "G(2,1,3)", "--subgroup", "s0;s1")
    assert code == 0
    assert json.loads(out)["result"]["holonomy_order"] == 4
    code, out, _ = call("--format", "json", "kahler", "G(4,2,2)", "--subgroup", "m:2,1:1,1")
    assert code == 0
    assert json.loads(out)["result"]["results"][0]["result"]["group_order"] == 2


def test_usage_errors_exit_two():
    assert call("info", "G(3,2,2)")[0] == 2
    assert call("info", "G38")[0] == 2
    assert call("torsion", "G32", "--order", "3")[0] == 2
    assert call("crystal", "G4", "--subgroup", "s99")[0] == 2
    assert call("kahler", "G4", "--subgroup", "m:1,2:0,0")[0] == 2
    assert call("info", "G(1,1,9)", "--max-order", "100")[0] == 2
    code, _, err = call("frobnicate")
    assert code == 2 and err == ""
    assert "error" in call("info", "G(3,2,2)")[2]


def test_table1_deterministic():
    a = call("table1", "--only", "G4,G5,G6", "--format", "json")
    b = call("table1", "--only", "G4,G5,G6", "--format", "json")
    assert a == b and a[0] == 0


def test_fixture_mismatch_exit_one(tmp_path):
    text = data_path().read_text()
    block = text.index("[G4]")
    end = text.index("[G5]")
    tampered = text[:block] + text[block:end].replace("kappa: 6", "kappa: 12") + text[end:]
    (tmp_path / "exceptional.txt").write_text(tampered)
    code, out, _ = call("table1", "--only", "G4", "--data-dir", str(tmp_path))
    assert code == 1
    assert "MISMATCH" in out


def test_data_dir_flag(tmp_path):
    shutil.copy(data_path(), tmp_path / "exceptional.txt")
    assert call("info", "G5", "--data-dir", str(tmp_path))[0] == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "refcrys", "info", "G4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "|W| = 24" in proc.stdout
