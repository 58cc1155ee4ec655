"""
Report rendering for the CLI: json, csv and text.

Every report is a dict carrying schema_version; floats are rounded to 12
significant digits so output is byte-stable for a fixed configuration.
"""
import json
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from src.algebra.errors import ConfigError

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.12g"


def _round(value: float) -> float:
    return float(FLOAT_FORMAT % value)


def normalize(obj: Any) -> Any:
    """JSON-ready copy: numpy scalars unwrapped, tuples as lists, floats at 12 significant digits"""
    if isinstance(obj, dict):
        return {str(key): normalize(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(value) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(normalize(report), indent=2, sort_keys=False)


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def _text_value(value: Any) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def to_text(report: Dict[str, Any], frame: Optional[pd.DataFrame]) -> str:
    """key: value lines for the scalar fields, then the table"""
    lines = []
    for key, value in normalize(report).items():
        if isinstance(value, (dict, list)):
            continue
        lines.append(f"{key}: {_text_value(value)}")
    counterexample = report.get("counterexample")
    if counterexample:
        lines.append(f"counterexample: [{counterexample['check']}] {counterexample['counterexample']}")
    if frame is not None and not frame.empty:
        lines.append("")
        lines.append(frame.to_string(index=False, float_format=lambda v: FLOAT_FORMAT % v))
    return "\n".join(lines) + "\n"


def render(report: Dict[str, Any], frame: Optional[pd.DataFrame], fmt: str) -> str:
    if fmt == "json":
        return to_json(report) + "\n"
    if fmt == "csv":
        if frame is None:
            raise ConfigError(f"Command {report.get('command')} has no tabular output; use json or text")
        return to_csv(frame)
    if fmt == "text":
        return to_text(report, frame)
    raise ConfigError(f"Unknown format: {fmt}. Available formats: ('json', 'csv', 'text')")
