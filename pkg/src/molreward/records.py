"""The grading-record wire schema shared by the batch CLI and the service.

Input record:  {"id", "task_kind", "problem", "response", "gold", "flags"}
Output record: {"id", "reward", "format", "accuracy", "bonus", "reason"}

An optional top-level "v" (schema version, default 1) is accepted; unknown
fields pass through untouched. Data problems (bad payloads, unknown kinds)
become {"id", "error"} records; oracle outages raise so callers can retry.
"""

from __future__ import annotations

import json
from typing import Any

from .rewards import ConfigurationError, GradingContext, TaskSpec, grade

KNOWN_INPUT_FIELDS = {"id", "task_kind", "problem", "response", "gold", "flags", "v"}
OUTPUT_FIELDS = ("id", "reward", "format", "accuracy", "bonus", "reason")


class RecordError(ValueError):
    """The record cannot be graded as posed (bad data, not infrastructure)."""


def process_record(record: dict[str, Any], ctx: GradingContext) -> dict[str, Any]:
    """Grade one record dict into one result dict.

    Raises RecordError on malformed records and lets OracleUnavailableError
    propagate (infrastructure, not data).
    """
    if not isinstance(record, dict):
        raise RecordError("record must be a JSON object")
    extras = {k: v for k, v in record.items() if k not in KNOWN_INPUT_FIELDS}
    rid = record.get("id")
    version = record.get("v", 1)
    if version != 1:
        raise RecordError(f"unsupported record schema version {version!r}")
    if "response" not in record or not isinstance(record["response"], str):
        raise RecordError("record needs a string 'response' field")
    try:
        task = TaskSpec.from_record(record)
        result = grade(task, record["response"], ctx)
    except ConfigurationError as e:
        raise RecordError(str(e)) from e
    out: dict[str, Any] = {"id": rid}
    out.update(result.as_dict())
    out.update(extras)
    return out


def error_record(record: Any, message: str) -> dict[str, Any]:
    rid = record.get("id") if isinstance(record, dict) else None
    return {"id": rid, "error": message}


def dumps_record(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False)
