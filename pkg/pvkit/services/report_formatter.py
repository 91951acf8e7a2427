"""
Format job reports into deterministic text.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pvkit.fieldcore.matrix import RatMatrix

logger = logging.getLogger(__name__)

JSON_MARKER = "--- json ---"


@dataclass
class Report:
    """Result of one job."""

    command: str
    exit_code: int = 0
    lines: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"command": self.command, "exit_code": self.exit_code}
        if self.error is not None:
            payload["error"] = self.error
        else:
            payload["result"] = self.data
        return payload


def format_matrix(matrix: RatMatrix, indent: str = "  ") -> List[str]:
    """One line per row, entries separated by commas."""
    if matrix.nrows == 0:
        return [f"{indent}[]"]
    return [f"{indent}[{', '.join(str(v) for v in row)}]" for row in matrix.rows]


def format_error(error: Dict[str, Any]) -> str:
    text = "error: "
    if error.get("file"):
        text += f"{error['file']}: "
    text += error["reason"]
    if error.get("position") is not None:
        text += f" at position {error['position']}"
    return text


class ReportFormatter:
    """Renders a Report as human lines followed by a JSON block."""

    def render_json(self, report: Report) -> str:
        return json.dumps(report.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def render(self, report: Report, json_only: bool = False) -> str:
        if json_only:
            return self.render_json(report) + "\n"
        lines = list(report.lines)
        if report.error is not None:
            lines.append(format_error(report.error))
        lines.append(JSON_MARKER)
        lines.append(self.render_json(report))
        return "\n".join(lines) + "\n"
