import json

import pytest

from padiczeros import field
from padiczeros.cli import main
from padiczeros.serialize import (
    field_from_dict,
    form_file_from_dict,
    form_to_dict,
    pencil_from_dict,
    pencil_to_dict,
    system_from_dict,
    system_to_dict,
)

PENCIL = {"field": {"p": 3, "e": 1}, "n": 2, "forms": [{"n": 2, "coeffs": [[1, 2, 1]]}]}
FORM = {"field": {"p": 2, "e": 1}, "n": 3, "coeffs": [[1, 2, 1], [3, 3, 1]]}
LIFT = {
    "p": 7,
    "n": 2,
    "forms": [[[1, 1, "1"], [2, 2, "-2"]]],
    "zero": [3, 1],
    "precision": 10,
}
NONMIN = {"field": {"p": 3, "e": 1}, "n": 3, "forms": [{"n": 3, "coeffs": [[1, 1, 1]]}]}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_bound_exit_codes(capsys):
    assert main(["bound", "--r", "3", "--n", "13", "--q", "37"]) == 0
    assert "admissible   True" in capsys.readouterr().out
    assert main(["bound", "--r", "3", "--n", "13", "--q", "13"]) == 2
    capsys.readouterr()
    assert main(["bound", "--r", "0", "--n", "13", "--q", "37"]) == 1


def test_bound_json_schema(capsys):
    assert main(["--format", "json", "bound", "--r", "1", "--n", "5", "--q", "7"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["admissible"] is True
    assert payload["sigma1"]["num"] * 7**4 == payload["sigma1"]["den"] * (1 + 7**3)
    assert set(payload["conditions"]) == {"q_gt_n", "n_ge_4r_plus_1", "sigma_sum_lt_1"}
    assert payload["terms"]["sigma1"][0]["t"] == 2


def test_min_q_command(capsys):
    assert main(["min-q", "--r", "4", "--n", "17"]) == 0
    out = capsys.readouterr().out
    assert "191" in out


def test_corollary1_table(capsys):
    # keep the expensive r=8 row fast with a tiny verification window
    assert main(["corollary1", "--window-factor", "1"]) == 0
    out = capsys.readouterr().out
    assert "37" in out and "191" in out and "271919" in out


def test_corollary2_gate_failure(capsys):
    assert main(["corollary2", "--r", "5", "--q", "100", "--no-exact-check"]) == 2


def test_rank_command(tmp_path, capsys):
    path = write(tmp_path, "form.json", FORM)
    assert main(["rank", path]) == 0
    out = capsys.readouterr().out
    assert "rank               3" in out
    assert "matrix rank        2" in out
    assert "square" in out


def test_zeros_command(tmp_path, capsys):
    path = write(tmp_path, "pencil.json", PENCIL)
    assert main(["--format", "json", "zeros", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["zeros"] == 5
    assert payload["nonsingular"] == 4
    assert payload["singular_nonzero"] == 0
    assert payload["exact_identity_count"] == 5


def test_zeros_workers_identical(tmp_path, capsys):
    path = write(tmp_path, "pencil.json", PENCIL)
    assert main(["--format", "json", "zeros", path]) == 0
    solo = json.loads(capsys.readouterr().out)
    assert main(["--format", "json", "zeros", path, "--workers", "3"]) == 0
    multi = json.loads(capsys.readouterr().out)
    assert solo == multi


def test_spectrum_command(tmp_path, capsys):
    path = write(tmp_path, "pencil.json", PENCIL)
    assert main(["--format", "json", "spectrum", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vector_counts"] == {"2": 2}
    assert payload["zero_combination_count"] == 0


def test_minimized_command(tmp_path, capsys):
    path = write(tmp_path, "bad.json", NONMIN)
    assert main(["--format", "json", "minimized", path]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["minimized"] is False
    assert payload["witness"]["w"] == 1
    assert payload["witness"]["basis"] == [[0, 1, 0], [0, 0, 1]]


def test_lift_command(tmp_path, capsys):
    path = write(tmp_path, "lift.json", LIFT)
    assert main(["--format", "json", "lift", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    x = int(payload["coords"][0])
    assert (x * x - 2) % 7**10 == 0


def test_parse_errors_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["rank", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "line 1" in err
    missing = write(tmp_path, "missing_field.json", {"n": 2, "coeffs": []})
    assert main(["rank", missing]) == 1


def test_cap_exit_3(tmp_path, capsys):
    big = {
        "field": {"p": 5, "e": 1},
        "n": 5,
        "forms": [{"n": 5, "coeffs": [[1, 1, 1]]}],
    }
    path = write(tmp_path, "big.json", big)
    assert main(["zeros", path, "--point-cap", "10"]) == 3
    assert "cap exceeded" in capsys.readouterr().err


def test_selftest_quick(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out


def test_selftest_detects_corrupted_modulus(capsys, monkeypatch):
    spec = field(2, 3)
    monkeypatch.setattr(spec, "modulus", (1, 0, 0, 1))  # x^3 + 1, reducible
    assert main(["selftest"]) == 2
    out = capsys.readouterr().out
    assert "FAIL  field arithmetic and modulus tables" in out


def test_serialization_round_trips():
    pencil = pencil_from_dict(PENCIL)
    assert pencil_to_dict(pencil) == PENCIL
    form = form_file_from_dict(FORM)
    assert form_to_dict(form) == {"n": 3, "coeffs": [[1, 2, 1], [3, 3, 1]]}
    system, zero, precision = system_from_dict(LIFT)
    assert system_to_dict(system, zero, precision) == LIFT
    assert field_from_dict({"p": 9 - 2}).q == 7


def test_serialization_validation_messages():
    with pytest.raises(ValueError, match="repr"):
        pencil_from_dict(
            {"field": {"p": 3}, "n": 2, "forms": [{"n": 2, "coeffs": [[1, 2, 9]]}]}
        )
    with pytest.raises(ValueError, match="forms\\[0\\]"):
        pencil_from_dict(
            {"field": {"p": 3}, "n": 2, "forms": [{"n": 3, "coeffs": []}]}
        )
    with pytest.raises(ValueError, match="precision"):
        system_from_dict({**LIFT, "precision": 0})
