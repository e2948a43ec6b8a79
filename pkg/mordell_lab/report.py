"""
    report.py - Byte-stable JSON and CSV output.

JSON is written by a small encoder instead of `json.dumps` so that floats always carry 17 significant digits
(`format(x, ".17g")`) and non-finite floats become null. Keys keep insertion order.
"""
import csv
import io
import json
import logging
import math
import os
from collections import OrderedDict

import numpy as np

from .conf import SCHEMA_VERSION
from .exceptions import ImproperlyConfigured


__all__ = ["format_json_float", "dumps", "report_envelope", "write_text", "write_json", "write_csv", "csv_text",
           "csv_path_for"]


logger = logging.getLogger(__name__)


def format_json_float(value):
    if not math.isfinite(value):
        return "null"
    text = format(value, ".17g")
    # keep integral floats recognisable as floats
    if not any(ch in text for ch in ".eEn"):
        text += ".0"
    return text


def _encode(obj, indent, level):
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_json_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "to_dict"):
        return _encode(obj.to_dict(), indent, level)

    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ("%s: %s" % (json.dumps(str(key)), _encode(value, indent, level + 1)) for key, value in obj.items())
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        # short numeric vectors stay on one line
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) or v is None for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        return "[" + pad + ("," + pad).join(_encode(v, indent, level + 1) for v in obj) + end + "]"
    raise TypeError("Object of type %s is not JSON serializable" % type(obj).__name__)


def dumps(obj, indent=2):
    """Serialize obj to JSON text ending with a newline. Objects with a `to_dict` method are expanded."""
    return _encode(obj, indent, 0) + "\n"


def report_envelope(command, config, **sections):
    """The versioned report document: schema_version, command, resolved config, then the given sections."""
    report = OrderedDict([("schema_version", SCHEMA_VERSION), ("command", command), ("config", config)])
    report.update((key, value) for key, value in sections.items() if value is not None)
    return report


def write_text(filename, text):
    try:
        with open(filename, "w", newline="") as file:
            file.write(text)
    except OSError as err:
        raise ImproperlyConfigured("Cannot write %r: %s" % (filename, err)) from err
    logger.info("Wrote %s", os.path.abspath(filename))


def write_json(filename, report):
    write_text(filename, dumps(report))


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format_json_float(float(value)) if math.isfinite(value) else ""
    return value


def csv_text(rows):
    """CSV with a header row taken from the keys of the first row."""
    if not rows:
        return ""
    stream = io.StringIO()
    writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _csv_cell(value) for key, value in row.items()})
    return stream.getvalue()


def write_csv(filename, rows):
    write_text(filename, csv_text(rows))


def csv_path_for(filename):
    """report.json -> report.csv (anything else gets .csv appended)."""
    root, ext = os.path.splitext(filename)
    if ext.lower() == ".json":
        return root + ".csv"
    return filename + ".csv"
