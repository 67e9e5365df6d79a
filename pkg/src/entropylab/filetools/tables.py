"""Deterministic CSV and JSON output of reports, profiles and verdicts."""
import json
import math
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd

from .serialization import encode_float

OutputFormat = Literal["csv", "json"]
SCHEMA_VERSION = "1.0"
FLOAT_FORMAT = "%.17g"


def frame_to_csv(frame: pd.DataFrame) -> str:
    """CSV with header, LF line endings and 17 significant digits."""
    return frame.to_csv(
        index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )


def _plain(value: Any) -> Any:
    """Convert numpy scalars and non-finite floats for :mod:`json`."""
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return None
        return encode_float(value)
    return value


def frame_records(frame: pd.DataFrame) -> list[dict[str, Any]]:
    """Rows of ``frame`` as dicts in column order."""
    columns = list(frame.columns)
    return [
        {column: _plain(value) for column, value in zip(columns, row)}
        for row in frame.itertuples(index=False, name=None)
    ]


def build_document(
    command: str,
    family: str,
    rows: list[dict[str, Any]] | None = None,
    verdicts: Mapping[str, Any] | None = None,
    **metadata: Any,
) -> dict[str, Any]:
    """JSON document following ``schemas/report.schema.json``."""
    document: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "family": family,
    }
    document.update(_plain(metadata))
    if rows is not None:
        document["rows"] = _plain(rows)
    if verdicts is not None:
        document["verdicts"] = _plain(verdicts)
    return document


def document_to_json(document: Mapping[str, Any]) -> str:
    """UTF-8 JSON text; floats use the shortest round-trip repr."""
    return (
        json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False)
        + "\n"
    )


def emit(text: str, out: Path | str | None = None) -> None:
    """Write ``text`` to ``out`` or to standard output."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(out).write_text(text, encoding="utf-8", newline="\n")


def render_table(
    frame: pd.DataFrame,
    output_format: OutputFormat,
    command: str,
    family: str,
    **metadata: Any,
) -> str:
    """Render a table as CSV or as a schema JSON document."""
    if output_format == "csv":
        return frame_to_csv(frame)
    if output_format == "json":
        return document_to_json(
            build_document(
                command, family, rows=frame_records(frame), **metadata
            )
        )
    raise ValueError(
        f"`output_format` must be 'csv' or 'json'. Got: {output_format}."
    )
