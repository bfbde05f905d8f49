"""Serialize responses as JSON documents or as a flat ``key: value`` text report."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from realsurf_app.constants.cli_constants import DEFAULT_OUTPUT_FORMAT
from realsurf_app.core.models import Response


def response_to_json(response: Response) -> str:
    return json.dumps(response.to_document(), indent=2, ensure_ascii=False)


def responses_to_json(responses: list[Response]) -> str:
    return json.dumps([r.to_document() for r in responses], indent=2, ensure_ascii=False)


def response_to_text(response: Response) -> str:
    lines = [f"SUBCOMMAND: {response.subcommand}", f"STATUS: {response.status}"]
    if response.error is not None:
        lines.append(f"ERROR: {response.error.code}")
        lines.append(f"MESSAGE: {response.error.message}")
        return "\n".join(lines)
    lines.extend(_flatten(response.result, ""))
    for key, statement in response.provenance.items():
        lines.append(f"PROVENANCE {key}: {statement}")
    return "\n".join(lines)


def _flatten(value: Any, prefix: str) -> list[str]:
    if isinstance(value, dict):
        lines: list[str] = []
        for key, item in value.items():
            lines.extend(_flatten(item, f"{prefix}.{key}" if prefix else str(key)))
        return lines
    if isinstance(value, list) and any(isinstance(item, (dict, list)) for item in value):
        lines = []
        for index, item in enumerate(value):
            lines.extend(_flatten(item, f"{prefix}[{index}]"))
        return lines
    if isinstance(value, list):
        return [f"{prefix}: {', '.join(_scalar(item) for item in value)}"]
    return [f"{prefix}: {_scalar(value)}"]


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def render_responses(responses: list[Response], output_format: str = DEFAULT_OUTPUT_FORMAT) -> str:
    """One document for a single response, a JSON array (or separated blocks) for a batch."""
    if output_format == "text":
        return "\n\n---\n\n".join(response_to_text(r) for r in responses) + "\n"
    if len(responses) == 1:
        return response_to_json(responses[0]) + "\n"
    return responses_to_json(responses) + "\n"


def save_responses(file_path: Path, responses: list[Response], output_format: str = DEFAULT_OUTPUT_FORMAT) -> None:
    file_path = file_path.resolve()
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(render_responses(responses, output_format), encoding="utf-8")
