from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from realsurf_app.cli.command_line import main, run
from realsurf_app.core.models import STATUS_ERROR, ErrorInfo, Response
from realsurf_app.core.response_exporter import render_responses, response_to_text, save_responses

CLASSIFY_REQUEST = {"subcommand": "classify", "payload": {"minimal": "MinimalConicBundle", "m": 3, "blowups": []}}


def feed_stdin(monkeypatch: pytest.MonkeyPatch, text: str) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO(text))


# --- exporter ---


def test_response_round_trips_through_json() -> None:
    (response,) = run(json.dumps(CLASSIFY_REQUEST))
    restored = Response.from_document(json.loads(render_responses([response])))
    assert restored.to_document() == response.to_document()
    assert restored.ok


def test_error_response_round_trips_through_json() -> None:
    response = Response("lines", STATUS_ERROR, error=ErrorInfo("BadRank", "Rank must be between 1 and 8, got 9."))
    restored = Response.from_document(json.loads(render_responses([response])))
    assert restored.error == response.error
    assert restored.exit_code == 4


def test_text_report() -> None:
    (response,) = run(json.dumps(CLASSIFY_REQUEST))
    text = response_to_text(response)
    lines = text.splitlines()
    assert lines[0] == "SUBCOMMAND: classify"
    assert lines[1] == "STATUS: ok"
    assert "class: ConicBundle" in lines
    assert "topology.render: 3 S2" in lines
    assert "topology.components[0].render: S2" in lines
    assert "comessatti: yes" in lines
    assert sum(1 for line in lines if line.startswith("PROVENANCE ")) == len(response.provenance)
    assert any(line.startswith("PROVENANCE comessatti: Theorem (Comessatti)") for line in lines)


def test_text_report_for_errors_and_batches() -> None:
    responses = run("[1", subcommand="lines") + run('{"r": 3}', subcommand="lines")
    text = render_responses(responses, "text")
    first, second = text.split("\n\n---\n\n")
    assert "ERROR: ParseError" in first
    assert "count: 6" in second


def test_save_responses_creates_parent(tmp_path: Path) -> None:
    target = tmp_path / "nested" / "out.json"
    save_responses(target, run('{"r": 2}', subcommand="lines"))
    assert json.loads(target.read_text(encoding="utf-8"))["result"]["count"] == 3


# --- run ---


def test_run_reports_parse_errors() -> None:
    (response,) = run("{not json")
    assert response.error is not None
    assert response.error.code == "ParseError"
    assert response.exit_code == 2


def test_run_batch() -> None:
    documents = [CLASSIFY_REQUEST, {"subcommand": "lines", "payload": {"r": 7, "real": 7, "pairs": 0}}]
    responses = run(json.dumps(documents), batch=True)
    assert [r.subcommand for r in responses] == ["classify", "lines"]
    assert responses[1].result["count"] == 56


def test_run_batch_needs_an_array() -> None:
    (response,) = run(json.dumps(CLASSIFY_REQUEST), batch=True)
    assert response.error is not None
    assert response.error.code == "SchemaError"


# --- main ---


def test_main_reads_stdin_and_writes_stdout(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    feed_stdin(monkeypatch, json.dumps(CLASSIFY_REQUEST))
    assert main([]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "ok"
    assert document["result"]["class"] == "ConicBundle"
    assert document["result"]["m"] == 3
    assert document["result"]["components"] == 3


def test_main_with_subcommand_and_files(tmp_path: Path) -> None:
    source = tmp_path / "request.json"
    source.write_text('{"first": {"sign": "+", "roots": [0, 1, 2, 3]}, "second": {"sign": "+", "roots": [5, 6, 7, 8]}}')
    target = tmp_path / "out" / "response.json"
    assert main(["equiv", "--input", str(source), "--output", str(target)]) == 0
    document = json.loads(target.read_text(encoding="utf-8"))
    assert document["result"]["witness"] == {"matrix": [["1", "5"], ["0", "1"]]}


def test_main_text_format(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    feed_stdin(monkeypatch, '{"r": 7, "real": 7, "pairs": 0}')
    assert main(["lines", "--format", "text"]) == 0
    assert "count: 56" in capsys.readouterr().out.splitlines()


@pytest.mark.parametrize(
    ("argv", "text", "expected"),
    [
        ([], "{", 2),
        ([], '{"subcommand": "volume", "payload": {}}', 3),
        (["classify"], '{"minimal": "K3"}', 4),
        (["intervals"], '{"numerator": ["-2", 0, 1]}', 5),
        (["qf-split"], '{"form": [1, 1], "a": 2, "witness": [{"q": 1}, 1]}', 6),
        (["lines", "--batch"], '[{"r": 3}, {"r": 9}, {"minimal": 1}]', 4),
    ],
)
def test_main_exit_codes(
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
    argv: list[str],
    text: str,
    expected: int,
) -> None:
    feed_stdin(monkeypatch, text)
    assert main(argv) == expected
    capsys.readouterr()


def test_main_missing_input_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["lines", "--input", str(tmp_path / "missing.json")]) == 2
    document = json.loads(capsys.readouterr().out)
    assert document["error"]["code"] == "ParseError"


def test_main_version(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "RealSurf" in capsys.readouterr().out
