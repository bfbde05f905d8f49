"""Request and response records exchanged between the CLI and the manager."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel

from realsurf_app.constants.cli_constants import EXIT_OK
from realsurf_app.core.errors import exit_code_for

STATUS_OK = "ok"
STATUS_ERROR = "error"


@dataclass(slots=True)
class Request:
    """A subcommand with its validated payload."""

    subcommand: str
    payload: BaseModel


@dataclass(slots=True)
class ErrorInfo:
    code: str
    message: str


@dataclass(slots=True)
class Response:
    """Outcome of one request; ``provenance`` maps each key of ``result`` to the statement behind it."""

    subcommand: str | None
    status: str
    result: dict[str, Any] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)
    error: ErrorInfo | None = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    @property
    def exit_code(self) -> int:
        if self.error is None:
            return EXIT_OK
        return exit_code_for(self.error.code)

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "subcommand": self.subcommand,
            "status": self.status,
            "result": self.result,
            "provenance": dict(self.provenance),
        }
        if self.error is not None:
            document["error"] = {"code": self.error.code, "message": self.error.message}
        return document

    @classmethod
    def from_document(cls, document: dict[str, Any]) -> Response:
        error = document.get("error")
        return cls(
            subcommand=document.get("subcommand"),
            status=document["status"],
            result=dict(document.get("result") or {}),
            provenance=dict(document.get("provenance") or {}),
            error=ErrorInfo(error["code"], error["message"]) if error else None,
        )
