"""Run reports and their JSON encoding (schema "fplab-1")."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.errors import ValidationError

logger = logging.getLogger(__name__)

SCHEMA = "fplab-1"

MATCH = "match"
MISMATCH = "mismatch"
NOT_APPLICABLE = "not-applicable"
EXPECTED_NONUNIQUE = "expected-nonunique"
CONSISTENT = "consistent"
COUNTEREXAMPLE = "counterexample-found"

VERDICTS = (MATCH, MISMATCH, NOT_APPLICABLE, EXPECTED_NONUNIQUE, CONSISTENT, COUNTEREXAMPLE)
FAILING_VERDICTS = {MISMATCH, COUNTEREXAMPLE}


def _jsonable(value: Any) -> Any:
    """Tuples become lists and keys become strings, as they would after a JSON round trip."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class Check:
    """One predicted-versus-observed comparison; soft checks only flag expected non-uniqueness."""
    quantity: str
    predicted: Any
    observed: Any
    hard: bool = True

    @property
    def matches(self) -> bool:
        return _jsonable(self.predicted) == _jsonable(self.observed)

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "predicted": _jsonable(self.predicted),
            "observed": _jsonable(self.observed),
            "hard": self.hard,
            "match": self.matches,
        }


def verdict_for(checks: Sequence[Check]) -> str:
    if not checks:
        return NOT_APPLICABLE
    if any(c.hard and not c.matches for c in checks):
        return MISMATCH
    if any(not c.matches for c in checks):
        return EXPECTED_NONUNIQUE
    return MATCH


@dataclass
class RunReport:
    """Outcome of one CLI command."""
    command: str
    inputs: Dict[str, Any]
    verdict: str
    predictions: Dict[str, Any] = field(default_factory=dict)
    oracle_results: List[Dict[str, Any]] = field(default_factory=list)
    arithmetic_mode: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)
    text: str = field(default="", repr=False, compare=False)  # human-readable rendering

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValidationError(f"unknown verdict {self.verdict!r}")
        self.inputs = _jsonable(self.inputs)
        self.predictions = _jsonable(self.predictions)
        self.oracle_results = _jsonable(self.oracle_results)
        self.details = _jsonable(self.details)

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict in FAILING_VERDICTS else 0

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "predictions": self.predictions,
            "oracle_results": self.oracle_results,
            "verdict": self.verdict,
            "arithmetic_mode": self.arithmetic_mode,
            "details": self.details,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        schema = data.get("schema")
        if schema != SCHEMA:
            raise ValidationError(f"unsupported report schema {schema!r}, expected {SCHEMA!r}")
        return cls(
            command=data["command"],
            inputs=data.get("inputs", {}),
            verdict=data["verdict"],
            predictions=data.get("predictions", {}),
            oracle_results=data.get("oracle_results", []),
            arithmetic_mode=data.get("arithmetic_mode"),
            details=data.get("details", {}),
        )


def emit_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True)


def parse_json(text: str) -> RunReport:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"report is not valid JSON: {e}") from e
    return RunReport.from_dict(data)


def emit_json_lines(reports: Sequence[RunReport]) -> str:
    """One report per line; scans write their stream this way."""
    return "".join(emit_json(r) + "\n" for r in reports)


def parse_json_lines(text: str) -> List[RunReport]:
    return [parse_json(line) for line in text.splitlines() if line.strip()]


def write_reports(reports: Sequence[RunReport], path: str) -> Optional[str]:
    """
    Write a single report as one JSON document, several as JSON lines.

    Args:
        reports: reports in output order
        path: file path, or "-" to return the text for stdout

    Returns:
        the JSON text when path is "-", else None
    """
    text = emit_json(reports[0]) + "\n" if len(reports) == 1 else emit_json_lines(reports)
    if path == "-":
        return text
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    logger.info(f"wrote {len(reports)} report(s) to {target}")
    return None
