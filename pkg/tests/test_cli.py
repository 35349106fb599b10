import json

import pytest

from catkit.board import save_schema
from catkit.cli import main
from catkit.schemas import validation_schemas
from catkit.telemetry import (
    EventKind,
    EventLog,
    SessionInfo,
    StudentInfo,
    export_dataset,
)


@pytest.fixture()
def uniform_schema_path(tmp_path):
    schema = validation_schemas()[0]  # uniform yellow
    path = tmp_path / "V01.json"
    path.write_bytes(save_schema(schema))
    return path


def write_program(tmp_path, text):
    path = tmp_path / "program.cat"
    path.write_text(text, encoding="utf-8")
    return path


def test_run_success_exit_zero(tmp_path, uniform_schema_path, capsys):
    program = write_program(tmp_path, "fillEmpty(yellow)\n")
    code = main(["run", str(program), "--schema", str(uniform_schema_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "success: yes" in out
    assert "dimension: D1" in out
    assert "y y y y y y" in out  # row C rendered


def test_run_parse_error_exit_one(tmp_path, capsys):
    program = write_program(tmp_path, "go(rigth,2)\n")
    code = main(["run", str(program)])
    assert code == 1
    assert "parse error" in capsys.readouterr().err


def test_run_interp_error_exit_two(tmp_path, uniform_schema_path, capsys):
    program = write_program(tmp_path, "goCell(F3)\ngo(up,1)\n")
    code = main(["run", str(program), "--schema", str(uniform_schema_path)])
    out = capsys.readouterr().out
    assert code == 2
    assert "OUT_OF_BOARD" in out
    assert "executed: 1/2" in out


def test_run_incomplete_board_exit_three(tmp_path, uniform_schema_path, capsys):
    program = write_program(tmp_path, "goCell(C1)\npaintSingleCell(yellow)\n")
    code = main(["run", str(program), "--schema", str(uniform_schema_path)])
    assert code == 3
    assert "success: no" in capsys.readouterr().out


def test_run_empty_program_fails_success(tmp_path, uniform_schema_path, capsys):
    program = write_program(tmp_path, "")
    code = main(["run", str(program), "--schema", str(uniform_schema_path)])
    out = capsys.readouterr().out
    assert code == 3
    assert "dimension: —" in out


def test_run_json_format(tmp_path, uniform_schema_path, capsys):
    program = write_program(tmp_path, "fillEmpty(yellow)\n")
    code = main(
        ["run", str(program), "--schema", str(uniform_schema_path), "--format", "json"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["success"] is True
    assert doc["score"]["total"] == 1 + 1 + 1  # D1 + symbolic artefact + no feedback


def test_run_with_custom_rubric(tmp_path, uniform_schema_path, capsys):
    rubric = tmp_path / "rubric.json"
    rubric.write_text(
        json.dumps(
            {
                "id": "flat",
                "algorithm": {"D0": 0, "D1": 0, "D2": 0},
                "artefact": {"G": 0, "P": 0},
                "autonomy": {"feedback": 0, "no_feedback": 0},
            }
        )
    )
    program = write_program(tmp_path, "fillEmpty(yellow)\n")
    main(
        ["run", str(program), "--schema", str(uniform_schema_path), "--rubric", str(rubric)]
    )
    assert "total=0 (rubric flat)" in capsys.readouterr().out


def test_validate_reports_each_file(tmp_path, uniform_schema_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"id\": \"x\", \"cells\": {}}")
    code = main(["validate", str(uniform_schema_path), str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    assert "ok (V01)" in out
    assert "INVALID" in out


def test_schemas_dump(tmp_path, capsys):
    out_dir = tmp_path / "bundle"
    code = main(["schemas", "--out", str(out_dir)])
    assert code == 0
    files = sorted(p.name for p in out_dir.glob("*.json"))
    assert len(files) == 27
    assert "V01.json" in files and "T15.json" in files


def test_schemas_respects_data_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CAT_DATA_DIR", str(tmp_path / "root"))
    code = main(["schemas"])
    assert code == 0
    assert (tmp_path / "root" / "schemas" / "V01.json").exists()


def dataset_file(tmp_path):
    session = SessionInfo("sess-1", "2023-03-15", "Ticino", "Scuola", "5a")
    log = EventLog(session)
    log.add_student(StudentInfo("stu-1", "f", "2011-05-01"))
    ts = 1000
    for kind, payload in (
        (EventKind.CONFIRM_COMMAND, {"command": "fillEmpty(yellow)"}),
        (
            EventKind.TASK_COMPLETED,
            {"success": True, "program": "fillEmpty(yellow)", "board": {}},
        ),
    ):
        log.record(kind, "stu-1", "V01", payload, timestamp_ms=ts)
        ts += 600_000
    path = tmp_path / "pilot.catlog.jsonl"
    path.write_bytes(export_dataset(log))
    return path


def test_analyze_times(tmp_path, capsys):
    path = dataset_file(tmp_path)
    code = main(["analyze", "times", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "G" in out and "10 min" in out


def test_analyze_success_with_bands(tmp_path, capsys):
    path = dataset_file(tmp_path)
    code = main(["analyze", "success", str(path), "--bands", "3-6!,10-13"])
    out = capsys.readouterr().out
    assert code == 0
    assert "1/1 (100%)" in out


def test_analyze_strategies_csv(tmp_path, capsys):
    path = dataset_file(tmp_path)
    code = main(["analyze", "strategies", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "Group,Dimension,GF,G,PF,P"


def test_analyze_json_to_file(tmp_path):
    path = dataset_file(tmp_path)
    out_path = tmp_path / "report.json"
    code = main(["analyze", "times", str(path), "--format", "json", "--out", str(out_path)])
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["report"] == "time_by_interaction"


def test_pseudonymise_command(tmp_path, capsys):
    path = dataset_file(tmp_path)
    out_path = tmp_path / "pilot.pseudo.jsonl"
    code = main(["pseudonymise", str(path), "--salt", "s", "--out", str(out_path)])
    assert code == 0
    text = out_path.read_text()
    assert "Ticino" not in text
    mapping = json.loads((tmp_path / "pilot.pseudo.mapping.json").read_text())
    assert "Ticino" in mapping["canton"]


def test_repl_session(monkeypatch, capsys):
    lines = iter(
        [
            "goCell(C1)",
            "paintSingleCell(red)",
            ":score",
            ":feedback off",
            "go(up,9)",
            ":reset",
            ":quit",
        ]
    )
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    code = main(["repl"])
    out = capsys.readouterr().out
    assert code == 0
    assert "dimension: D0" in out
    assert "Feedback off" in out
    assert "NO_POSITION" not in out  # cursor was set before moving
    assert "board reset" in out


def test_repl_localised_labels(monkeypatch, capsys):
    lines = iter([":feedback off", ":quit"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    code = main(["repl", "--lang", "it"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Feedback disattivato" in out
