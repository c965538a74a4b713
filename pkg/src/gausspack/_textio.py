"""Byte-deterministic CSV and JSON rendering.

All numbers written by the CLI pass through fmt_float, which renders 17
significant digits (enough to round-trip any double exactly).  The JSON
writer emits keys in insertion order with no whitespace, so identical
inputs always produce identical bytes; the standard library encoder is
not used because it offers no control over float formatting.
"""

import csv
import io
import json
import math

import numpy as np

__all__ = ["fmt_float", "dumps_stable", "render_csv"]


def fmt_float(value):
    """17-significant-digit decimal rendering of a finite float."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite value {value!r}")
    return format(value, ".17g")


def _write(obj, out):
    if isinstance(obj, dict):
        out.write("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.write(",")
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.write(json.dumps(key))
            out.write(":")
            _write(value, out)
        out.write("}")
    elif isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        out.write("[")
        for i, value in enumerate(obj):
            if i:
                out.write(",")
            _write(value, out)
        out.write("]")
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif obj is None:
        out.write("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.write("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(fmt_float(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_stable(obj):
    """Compact JSON text with deterministic float and key rendering."""
    out = io.StringIO()
    _write(obj, out)
    out.write("\n")
    return out.getvalue()


def render_csv(columns, rows):
    """RFC 4180 CSV text with LF line endings; floats via fmt_float."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([
            fmt_float(v) if isinstance(v, (float, np.floating)) else v
            for v in row
        ])
    return out.getvalue()
