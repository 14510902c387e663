import json

import pytest

from heisweil.cli import run
from heisweil.suites import RunConfig, SUITES, standard_mackey_configurations


def test_verify_single_suite(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(["verify", "sqrt", "--p", "3", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["suite"] == "sqrt"
    assert report["failures"] == []
    assert report["checks"] > 0
    assert report["config"]["p"] == 3 and report["seed"] == 0


def test_verb_noun_order_equivalence(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "mackey", "--out", str(out1)]) == 0
    assert run(["mackey", "verify", "--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()


def test_reports_byte_identical_for_same_config(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    run(["verify", "sqrt", "--seed", "11", "--out", str(out1)])
    run(["verify", "sqrt", "--seed", "11", "--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_guard_gives_exit_2():
    assert run(["verify", "weil", "--p", "11", "--mode", "exhaustive"]) == 2
    assert run(["verify", "weil", "--p", "4"]) == 2
    assert run(["verify", "weil", "--ell", "2", "--p", "5"]) == 2


def test_bad_arguments_give_exit_2():
    assert run(["verify", "nonsense"]) == 2
    assert run(["frobnicate"]) == 2


def test_weil_dump_has_all_sp_matrices(tmp_path):
    out = tmp_path / "dump.json"
    assert run(
        ["weil", "dump", "--p", "3", "--ell", "1", "--zeta", "1", "--out", str(out)]
    ) == 0
    data = json.loads(out.read_text())
    assert len(data["images"]) == 24
    first = data["images"][0]
    assert "element" in first and "matrix" in first
    entry = first["matrix"][0][0]
    assert set(entry) == {"N", "coeffs"}  # CycNumber JSON encoding


def test_heisenberg_and_mackey_dumps(tmp_path):
    out = tmp_path / "h.json"
    assert run(["heisenberg", "dump", "--p", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["elements"]) == 27
    assert len(data["special_iso_offsets"]) == 9

    out2 = tmp_path / "t.json"
    assert run(["mackey", "dump", "--out", str(out2)]) == 0
    table = json.loads(out2.read_text())
    assert table["order"] == 27
    assert len(table["table"]) == 27


def test_sqrt_command(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert run(
        [
            "sqrt", "--n", "1", "--p", "3", "--K", "4", "--k0", "1",
            "--matrix", "[[4]]", "--out", str(out),
        ]
    ) == 0
    data = json.loads(out.read_text())
    assert data["root"] == [[79]]
    assert data["residual_levels"] == [2, 3, 4]


def test_sqrt_command_rejects_outsider():
    assert run(
        ["sqrt", "--n", "1", "--p", "3", "--K", "4", "--matrix", "[[2]]"]
    ) == 2


def test_zoo_has_at_least_twenty_configurations():
    assert len(standard_mackey_configurations()) >= 20
