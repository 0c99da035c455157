"""CLI behaviour: formats, determinism, exit codes, fault detection."""

import json

import pytest

from repcheck import cli
from repcheck.characters import _RAW_TABLES


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classify_text_ends_with_realizable_line(capsys):
    code, out = run_cli(capsys, "classify")
    assert code == 0
    assert out.rstrip().splitlines()[-1] == "realizable: K4_1234, D4_125"


def test_classify_json_schema(capsys):
    code, out = run_cli(capsys, "classify", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["realizable"] == ["K4_1234", "D4_125"]
    entry = doc["families"][0]
    assert set(entry) == {
        "family", "dimension", "realizable", "witness", "obstructions",
        "chi_conj_decomposition",
    }


def test_classify_json_is_byte_identical_across_runs(capsys):
    _, first = run_cli(capsys, "classify", "--json")
    _, second = run_cli(capsys, "classify", "--json")
    assert first == second


def test_env_var_switches_default_format(capsys, monkeypatch):
    monkeypatch.setenv("REPCHECK_OUTPUT", "json")
    code, out = run_cli(capsys, "classify")
    assert code == 0
    assert json.loads(out)["realizable"] == ["K4_1234", "D4_125"]


def test_show_group_header_and_rows(capsys):
    code, out = run_cli(capsys, "show-group", "D4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "group D4 order 8"
    assert len(lines) == 9


def test_show_group_rejects_unknown_name(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["show-group", "Q8"])
    assert exc.value.code == 2


def test_show_table_text(capsys):
    code, out = run_cli(capsys, "show-table", "D4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "character table D4"
    assert lines[1].split() == ["e", "r", "r2", "s", "rs"]
    assert lines[6].split() == ["chi5", "2", "0", "-2", "0", "0"]


def test_show_table_json_coefficient_tuples(capsys):
    code, out = run_cli(capsys, "show-table", "D8", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["group"] == "D8"
    assert doc["labels"][4] == "chiE1"
    # chiE1 at the class of z is sqrt2 = zeta - zeta^3
    value = doc["values"][4][1]
    assert value == [
        {"num": "0", "den": "1"},
        {"num": "1", "den": "1"},
        {"num": "0", "den": "1"},
        {"num": "-1", "den": "1"},
    ]


def test_simulate_teleport_default_state(capsys):
    code, out = run_cli(capsys, "simulate-teleport")
    assert code == 0
    assert out.count("probability 1/4") == 4


def test_simulate_teleport_custom_state_json(capsys):
    code, out = run_cli(capsys, "simulate-teleport", "--state", "1/2,0,1/3,-1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["outcomes"]) == 4
    for rec in doc["outcomes"]:
        assert rec["probability"] == {"num": "1", "den": "4"}
        assert rec["chsh"] is None


def test_simulate_teleport_rejects_bad_state(capsys):
    code, _ = run_cli(capsys, "simulate-teleport", "--state", "1,2,3")
    assert code == 2
    code, _ = run_cli(capsys, "simulate-teleport", "--state", "0,0,0,0")
    assert code == 2


def test_simulate_swap_json(capsys):
    code, out = run_cli(capsys, "simulate-swap", "--rounds", "2", "--seed", "0", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rounds"]) == 2
    for entry in doc["rounds"]:
        assert entry["probability"] == {"num": "1", "den": "8"}
        coeffs = entry["chsh"]["coeffs"]
        assert coeffs == [
            {"num": "0", "den": "1"},
            {"num": "2", "den": "1"},
            {"num": "0", "den": "1"},
            {"num": "-2", "den": "1"},
        ]


def test_simulate_swap_deterministic_for_fixed_flags(capsys):
    _, first = run_cli(capsys, "simulate-swap", "--rounds", "4", "--seed", "9", "--json")
    _, second = run_cli(capsys, "simulate-swap", "--rounds", "4", "--seed", "9", "--json")
    assert first == second


def test_simulate_swap_rejects_bad_rounds(capsys):
    code, _ = run_cli(capsys, "simulate-swap", "--rounds", "0")
    assert code == 2


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out = run_cli(capsys, "classify", "--json", "--out", str(path))
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["realizable"] == ["K4_1234", "D4_125"]


def test_verify_all_passes_on_correct_build(capsys):
    code, out = run_cli(capsys, "verify-all")
    assert code == 0
    assert "FAIL" not in out
    assert out.rstrip().splitlines()[-1].endswith("checks passed")


def test_verify_all_catches_injected_table_fault(capsys, monkeypatch):
    labels, rows = _RAW_TABLES["D4"]
    bad_rows = tuple(row if i != 4 else (2, 0, -2, 0, 1) for i, row in enumerate(rows))
    monkeypatch.setitem(_RAW_TABLES, "D4", (labels, bad_rows))
    code, out = run_cli(capsys, "verify-all")
    assert code == 1
    assert "FAIL character-tables" in out
