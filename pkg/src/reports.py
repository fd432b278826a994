"""
Check results and run reports.

Every verification routine returns CheckResult objects; the CLI gathers them in a
Report and serialises it as JSON (byte-deterministic), text or CSV.
"""

import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator

from utils.logging_config import get_logger

logger = get_logger("excross.reports")


def jsonable(value: Any) -> Any:
    """Convert witnesses (tuples, numpy scalars, Fractions, sets) into plain JSON values."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    return str(value)


class CheckResult(BaseModel):
    """Outcome of one verification: pass/fail plus a reproducing witness on failure."""
    name: str
    passed: bool
    witness: Optional[Any] = None
    detail: str = ""

    @field_validator("witness", mode="before")
    @classmethod
    def _plain_witness(cls, value):
        return jsonable(value)

    def __bool__(self) -> bool:
        return self.passed


def check(name: str, failures: List[Any], total: int, what: str = "cases") -> CheckResult:
    """Summarise a sweep: passes iff no failures; the first failure is the witness."""
    if failures:
        logger.warning(f"Check failed: {name}", extra={"check": name, "witness": jsonable(failures[0])})
        return CheckResult(
            name=name,
            passed=False,
            witness=failures[0],
            detail=f"{len(failures)} of {total} {what} failed",
        )
    return CheckResult(name=name, passed=True, detail=f"{total} {what} checked")


def _cell(value: Any) -> Any:
    """Scalars as they are; lists and dicts as compact JSON."""
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False, separators=(",", ":"))
    return value


def table_frame(table: Dict[str, Any]) -> pd.DataFrame:
    """A report table {"elements", "columns"?, "table"} as a DataFrame keyed by its labels."""
    rows = [[_cell(v) for v in row] for row in table.get("table", [])]
    labels = table.get("elements") or table.get("labels") or []
    columns = table.get("columns") or labels
    width = len(rows[0]) if rows else len(columns)
    index = labels if len(labels) == len(rows) else None
    return pd.DataFrame(rows, index=index, columns=columns if len(columns) == width else None)


class Report(BaseModel):
    """A run report: dimensions, check results and exported tables."""
    command: str
    group: Optional[str] = None
    fixture: Optional[str] = None
    dimensions: Dict[str, int] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    tables: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *results: CheckResult) -> "Report":
        for result in results:
            if isinstance(result, list):
                self.checks.extend(result)
            else:
                self.checks.append(result)
        return self

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"excross {self.command}"]
        if self.group:
            lines.append(f"group: {self.group}")
        if self.fixture:
            lines.append(f"fixture: {self.fixture}")
        for key in sorted(self.dimensions):
            lines.append(f"dim {key} = {self.dimensions[key]}")
        for note in self.notes:
            lines.append(note)
        for table_name in sorted(self.tables):
            frame = table_frame(self.tables[table_name])
            lines.append(f"table {table_name} ({frame.shape[0]} x {frame.shape[1]}):")
            lines.append(frame.to_string())
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"[{status}] {c.name}: {c.detail}".rstrip(": ")
            if not c.passed and c.witness is not None:
                line += f" (witness: {json.dumps(c.witness, ensure_ascii=False)})"
            lines.append(line)
        lines.append("result: " + ("all checks passed" if self.passed else "some checks FAILED"))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """Tables in long form (table,row,column,value); without tables, one row per check."""
        buffer = io.StringIO()
        if self.tables:
            records = []
            for table_name in sorted(self.tables):
                table = self.tables[table_name]
                labels = table.get("elements") or table.get("labels") or []
                columns = table.get("columns") or labels
                for i, row in enumerate(table.get("table", [])):
                    for j, value in enumerate(row):
                        records.append({
                            "table": table_name,
                            "row": labels[i] if i < len(labels) else i,
                            "column": columns[j] if j < len(columns) else j,
                            "value": _cell(value),
                        })
            df = pd.DataFrame(records, columns=["table", "row", "column", "value"])
        else:
            df = pd.DataFrame(
                [
                    {
                        "check": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                        "witness": json.dumps(c.witness, ensure_ascii=False) if c.witness is not None else "",
                    }
                    for c in self.checks
                ],
                columns=["check", "passed", "detail", "witness"],
            )
        df.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()
