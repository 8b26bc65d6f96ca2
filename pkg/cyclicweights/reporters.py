"""
Report generators: JSON, CSV and markdown renderings of command results
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder for numpy scalars and arrays"""

    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        if isinstance(obj, Path):
            return str(obj)
        return super().default(obj)


def _write(text: str, filepath: Optional[Union[str, Path]]) -> str:
    if filepath:
        try:
            Path(filepath).write_text(text)
        except OSError as exc:
            raise OSError(f"Failed to write report to {filepath}: {exc}") from exc
    return text


class ValidationReport:
    """Base class for reports over a command payload and its check records"""

    def __init__(self, payload: Dict[str, Any], checks: Optional[List[Dict[str, Any]]] = None):
        """
        Args:
            payload: Command result, already JSON-shaped
            checks: Records from ClaimValidator.get_failed_validations() or
                get_results()["results"]
        """
        self.payload = payload
        self.checks = checks or []

    def get_failed_count(self) -> int:
        return sum(1 for c in self.checks if not c["passed"] and c.get("critical", True))

    def get_warning_count(self) -> int:
        return sum(1 for c in self.checks if not c["passed"] and not c.get("critical", True))

    def get_status(self) -> str:
        if self.get_failed_count() > 0:
            return "FAILED"
        if self.get_warning_count() > 0:
            return "WARNING"
        return "PASSED"


class JSONReporter(ValidationReport):
    """Sorted-key JSON, so repeated runs are byte-identical"""

    def generate(self, filepath: Optional[Union[str, Path]] = None, pretty: bool = True) -> str:
        document = dict(self.payload)
        if self.checks:
            document["status"] = self.get_status()
            document["checks"] = [
                {k: c[k] for k in ("rule", "context", "passed", "message") if k in c}
                for c in self.checks
            ]
        text = json.dumps(document, cls=NumpyEncoder, indent=2 if pretty else None, sort_keys=True)
        return _write(text + "\n", filepath)


class CSVReporter:
    """One row per record of a pandas DataFrame"""

    def __init__(self, frame: pd.DataFrame):
        self.frame = frame

    def generate(self, filepath: Optional[Union[str, Path]] = None) -> str:
        return _write(self.frame.to_csv(index=False, lineterminator="\n"), filepath)


class MarkdownReporter:
    """
    Pipe table of a DataFrame. With transpose=True the first column becomes
    the header row, which gives one column per field size.
    """

    def __init__(self, frame: pd.DataFrame, title: Optional[str] = None):
        self.frame = frame
        self.title = title

    def generate(self, filepath: Optional[Union[str, Path]] = None, transpose: bool = False) -> str:
        frame = self.frame
        if transpose:
            frame = frame.set_index(frame.columns[0]).T.reset_index().rename(columns={"index": ""})
        header = [str(c) for c in frame.columns]
        lines = []
        if self.title:
            lines += [f"### {self.title}", ""]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join("---" for _ in header) + "|")
        for row in frame.itertuples(index=False):
            lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
        return _write("\n".join(lines) + "\n", filepath)


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ", ".join(str(v) for v in value) if value else "none"
    if value is None or (isinstance(value, float) and np.isnan(value)) or value is pd.NA:
        return ""
    return str(value)


def render(payload: Dict[str, Any], frame: Optional[pd.DataFrame], output_format: str,
           checks: Optional[List[Dict[str, Any]]] = None, title: Optional[str] = None,
           transpose: bool = False) -> str:
    """Render a command result in the requested format"""
    if output_format == "json" or frame is None:
        return JSONReporter(payload, checks).generate()
    if output_format == "csv":
        return CSVReporter(frame).generate()
    if output_format == "markdown":
        return MarkdownReporter(frame, title).generate(transpose=transpose)
    raise ValueError(f"Unsupported format '{output_format}'. Supported: json, csv, markdown")
