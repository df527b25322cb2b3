from __future__ import annotations

import json

import pytest

from indecomp.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.lstrip().startswith("{") else out)


@pytest.fixture
def m_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert main(["construct", "--family", "M", "--d", "2", "--lambda", "1", "--p", "5", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_construct_writes_valid_json(m_file):
    data = json.loads(m_file.read_text())
    assert data["p"] == 5 and data["dims"]["t2"] == 4


def test_check_exhaustive_certifies_local(capsys, m_file):
    code, out = run(capsys, "check", str(m_file), "--method", "exhaustive")
    assert code == EXIT_OK
    assert out["report"]["verdict"] == "local" and out["passed"]
    assert set(out) == {"command", "passed", "report", "timings"}


def test_check_iso_same_file(capsys, m_file):
    code, out = run(capsys, "check", "iso", str(m_file), str(m_file))
    assert code == EXIT_OK and out["report"]["verdict"] == "iso"


def test_check_fitting_flags_direct_sum(capsys, tmp_path):
    from indecomp.families import build_M_cl5

    path = tmp_path / "sum.json"
    path.write_text(json.dumps(build_M_cl5(1, 0, 7).direct_sum(build_M_cl5(1, 2, 7)).to_json()))
    code, out = run(capsys, "check", str(path), "--method", "fitting", "--seed", "1")
    assert code == EXIT_FAILED and out["report"]["verdict"] == "decomposable"


def test_decompose_rows(capsys, m_file):
    code, out = run(capsys, "decompose", str(m_file))
    assert code == EXIT_OK
    assert out["report"]["bottom"] == [[2, 5, 2], [3, 4, 2]]
    assert out["report"]["top"] == [[1, 4, 2], [2, 3, 2]]


def test_hom_table_and_k22(capsys):
    code, out = run(capsys, "hom-table", "--n", "4")
    assert code == EXIT_OK and out["report"]["matches_closed_form"]
    code, out = run(capsys, "find-k22", "--n", "5")
    assert code == EXIT_OK and [[2, 5], [3, 4], [1, 4], [2, 3]] in out["report"]["configurations"]


def test_sandal_verify(capsys):
    code, out = run(capsys, "sandal", "verify", "--d", "2", "--p", "3")
    assert code == EXIT_OK and out["report"]["iso_to_M"] == "iso"


def test_vr_verify_refined_passes(capsys):
    code, out = run(capsys, "vr", "verify", "--d", "1", "--refined")
    assert code == EXIT_OK
    assert out["report"]["h1_dims"] == {"bottom": [0, 1, 2, 2, 1], "top": [1, 2, 2, 1, 0]}


def test_vr_build_writes_csv(capsys, tmp_path):
    code, _ = run(capsys, "vr", "build", "--d", "1", "--refined", "--out", str(tmp_path / "vr"))
    assert code == EXIT_OK
    assert (tmp_path / "vr" / "upper.csv").read_text().startswith("id,x_num")


def test_text_format(capsys):
    code, out = run(capsys, "hom-table", "--n", "2", "--format", "text")
    assert code == EXIT_OK and "passed: True" in out


def test_seed_from_environment(capsys, m_file, monkeypatch):
    monkeypatch.setenv("INDECOMP_SEED", "11")
    _, out = run(capsys, "check", str(m_file), "--method", "fitting", "--trials", "2")
    assert out["report"]["seed"] == 11
    monkeypatch.setenv("INDECOMP_SEED", "x")
    assert main(["check", str(m_file)]) == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent.json"],
    ["construct", "--family", "M"],
    ["construct", "--family", "M", "--d", "0"],
    ["construct", "--family", "M", "--d", "1", "--p", "4"],
    ["hom-table", "--n", "3", "--tau", "fx"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "nope"])
    assert exc.value.code == 2
