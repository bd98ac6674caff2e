"""
Report View Component for the Equivariant Operad Workbench
Collects the outcome of one CLI run (command echo, checks, counts and tables) and renders it
as plain text or as deterministic JSON.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..utils.config import CLI_CONFIG, EXIT_CODES
from ..utils.helpers import format_status

logger = logging.getLogger(__name__)

# ==================== REPORT RECORDS ====================

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail, 'witness': self.witness}


@dataclass
class RunReport:
    """Everything one command produced; equal inputs and seed give equal reports"""
    command: List[str]
    checks: List[CheckResult] = field(default_factory=list)
    counts: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, pd.DataFrame] = field(default_factory=dict)
    messages: List[str] = field(default_factory=list)
    wall_time: Optional[float] = None

    def add_check(self, name: str, passed: bool, detail: str = "", witness: Optional[str] = None) -> CheckResult:
        result = CheckResult(name, bool(passed), detail, witness)
        self.checks.append(result)
        logger.info(f"{name}: {'pass' if passed else 'fail'} {detail}")
        return result

    def add_table(self, name: str, rows: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
        frame = pd.DataFrame(list(rows), columns=list(columns) if columns else None)
        self.tables[name] = frame
        return frame

    def add_count(self, name: str, value: Any):
        self.counts[name] = value

    def add_message(self, message: str):
        self.messages.append(message)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES['pass'] if self.passed else EXIT_CODES['check_failed']

    # ==================== RENDERING ====================

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        data = {
            'command': list(self.command),
            'status': 'pass' if self.passed else 'fail',
            'checks': [check.to_dict() for check in self.checks],
            'counts': {str(k): v for k, v in self.counts.items()},
            # to_json converts numpy scalars to plain JSON values
            'tables': {name: json.loads(frame.to_json(orient='records')) for name, frame in self.tables.items()},
            'messages': list(self.messages),
        }
        if timing and self.wall_time is not None:
            data['wall_time'] = round(self.wall_time, 6)
        return data

    def render_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=CLI_CONFIG['json_indent'], sort_keys=True, ensure_ascii=False)

    def render_text(self, timing: bool = False) -> str:
        lines = [f"$ {' '.join(self.command)}"]
        for message in self.messages:
            lines.append(message)
        if self.counts:
            lines.append("")
            lines.append("Counts:")
            for key, value in self.counts.items():
                lines.append(f"  {key}: {value}")
        for name, frame in self.tables.items():
            lines.append("")
            lines.append(f"{name}:")
            lines.append("  (empty)" if frame.empty else frame.to_string(index=False))
        if self.checks:
            lines.append("")
            lines.append("Checks:")
            for check in self.checks:
                line = f"  {format_status(check.passed)}  {check.name}"
                if check.detail:
                    line += f" ({check.detail})"
                lines.append(line)
                if check.witness:
                    lines.append(f"      witness: {check.witness}")
        lines.append("")
        lines.append(f"Status: {'pass' if self.passed else 'fail'}")
        if timing and self.wall_time is not None:
            lines.append(f"Wall time: {self.wall_time:.3f}s")
        return '\n'.join(lines)

    def render(self, fmt: str = 'text', timing: bool = False) -> str:
        if fmt == 'json':
            return self.render_json(timing)
        return self.render_text(timing)
