"""
Deterministic output for CLI artifacts.

CSV and JSON floats use a fixed 17-significant-digit format and '.' decimals;
JSON keeps insertion order. Equal inputs always produce byte-identical output.
"""
import csv
import io
import json
import math
from typing import Any, Iterable, Sequence


def format_float(value: float) -> str:
    """Format a float with 17 significant digits, locale independent."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a header row plus data rows; floats are formatted with format_float."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(cell) if isinstance(cell, float) else cell for cell in row])
    return buffer.getvalue()


def _json_value(value: Any, depth: int) -> str:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return json.dumps(value)
    if isinstance(value, float):
        # Non-finite values keep json's NaN/Infinity spellings.
        return format_float(value) if math.isfinite(value) else json.dumps(value)
    pad = "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(key))}: {_json_value(item, depth + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_json_value(item, depth + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    """
    Render JSON with stable key order (insertion order), two-space indent and
    a trailing newline. Floats use format_float, like the CSV output.
    """
    return _json_value(payload, 0) + "\n"
