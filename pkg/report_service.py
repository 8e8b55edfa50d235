"""
Report Service
Builds schema-versioned reports and writes them as canonical JSON, CSV or XLSX
"""

import io
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema
import pandas as pd
from openpyxl import load_workbook
from openpyxl.styles import Font, PatternFill

from config import get_config
from exceptions import InputDomainError
from utils.filename_sanitizer import create_report_filename

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"
SCHEMA_PATH = Path(__file__).resolve().parent / "schemas" / "report.schema.json"
FORMATS = ('json', 'csv', 'xlsx')


@dataclass
class CheckResult:
    """Outcome of one verification suite; failures carry a counterexample"""
    name: str
    passed: bool
    checked: int
    counterexample: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise InputDomainError(f"failed check {self.name} needs a counterexample")

    def to_json(self):
        return {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'counterexample': self.counterexample,
        }


@dataclass
class Report:
    command: List[str]
    bounds: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self):
        return {
            'schema_version': SCHEMA_VERSION,
            'command': list(self.command),
            'bounds': self.bounds,
            'meta': self.meta,
            'rows': self.rows,
            'checks': [check.to_json() for check in self.checks],
        }


def load_schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, 'r', encoding='utf-8') as f:
        return json.load(f)


def validate_report(data: Dict[str, Any]):
    """Raise jsonschema.ValidationError when the payload breaks the shipped schema"""
    jsonschema.validate(instance=data, schema=load_schema())


def render_json(report: Report) -> str:
    data = report.to_json()
    validate_report(data)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _flatten(row: Dict[str, Any]) -> Dict[str, Any]:
    flat = {}
    for key, value in row.items():
        if isinstance(value, (list, dict)):
            flat[key] = json.dumps(value, sort_keys=True, separators=(',', ':'))
        else:
            flat[key] = value
    return flat


def _frames(report: Report) -> Dict[str, pd.DataFrame]:
    frames = {}
    if report.rows:
        frames['Rows'] = pd.DataFrame([_flatten(row) for row in report.rows])
    if report.checks:
        frames['Checks'] = pd.DataFrame([_flatten(check.to_json()) for check in report.checks])
    return frames


def render_csv(report: Report) -> str:
    """Rows as CSV; reports with checks only (verify) list the checks instead"""
    frames = _frames(report)
    frame = frames.get('Rows', frames.get('Checks'))
    if frame is None:
        return ""
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_xlsx(report: Report, path: str):
    frames = _frames(report)
    summary = pd.DataFrame([
        {'field': 'schema_version', 'value': SCHEMA_VERSION},
        {'field': 'command', 'value': " ".join(report.command)},
        {'field': 'bounds', 'value': json.dumps(report.bounds, sort_keys=True)},
        {'field': 'meta', 'value': json.dumps(report.meta, sort_keys=True)},
    ])
    with pd.ExcelWriter(path, engine='openpyxl') as writer:
        summary.to_excel(writer, sheet_name="Report", index=False)
        for name, frame in frames.items():
            frame.to_excel(writer, sheet_name=name, index=False)
    _format_excel(path)


def _format_excel(filename: str):
    """Bold header row and fitted column widths"""
    try:
        wb = load_workbook(filename)
        for sheet in wb.worksheets:
            for cell in sheet[1]:
                cell.font = Font(bold=True, color="FFFFFF")
                cell.fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
            for column in sheet.columns:
                width = max(len(str(cell.value)) if cell.value is not None else 0 for cell in column)
                sheet.column_dimensions[column[0].column_letter].width = min(width + 2, 50)
        wb.save(filename)
        logger.debug(f"Excel formatting applied to {filename}")
    except Exception as e:
        logger.warning(f"Could not format Excel: {e}")


def report_name(report: Report) -> str:
    return " ".join(report.command) or "report"


def write_report(report: Report, fmt: str = 'json', output: Optional[str] = None) -> Optional[str]:
    """
    Write the report and return its path. `output` may be a file, a directory,
    or '-' for stdout (json and csv only); without it the configured output
    directory is used.
    """
    if fmt not in FORMATS:
        raise InputDomainError(f"unknown report format {fmt!r}")
    if output == '-':
        if fmt == 'xlsx':
            raise InputDomainError("xlsx reports cannot be written to stdout")
        print(render_json(report) if fmt == 'json' else render_csv(report), end="")
        return None

    if output is None or os.path.isdir(output):
        directory = output or get_config().OUTPUT_DIR
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, create_report_filename(report_name(report), fmt))
    else:
        path = output
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)

    if fmt == 'xlsx':
        write_xlsx(report, path)
    else:
        text = render_json(report) if fmt == 'json' else render_csv(report)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    logger.info(f"Report written to {path}")
    return path
