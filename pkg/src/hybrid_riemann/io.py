"""CSV and JSON emission.  Floats are written with 17 significant digits so
every binary64 value survives a round trip."""

from __future__ import annotations

import contextlib
import csv
import json
import sys

import numpy as np


def fmt(value):
    return f"{float(value):.17g}"


@contextlib.contextmanager
def _sink(path):
    """Open ``path`` for writing; ``"-"`` or a file object is used as is."""
    if path == "-":
        yield sys.stdout
    elif hasattr(path, "write"):
        yield path
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_table(path, header, rows):
    """Write a numeric table as CSV with 17 significant digits."""
    with _sink(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in np.atleast_2d(rows):
            writer.writerow([fmt(v) for v in row])


def read_table(path):
    """Inverse of :func:`write_table`: ``(header, float array of rows)``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, np.array(rows, dtype=float).reshape(len(rows), len(header))


def write_columns(path, columns: dict, fmt_name="csv"):
    """Write named equal-length columns as CSV or as a JSON object of lists."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    if fmt_name == "csv":
        write_table(path, names, data)
    elif fmt_name == "json":
        # repr of a Python float is the shortest exact representation
        payload = {n: [float(v) for v in data[:, i]] for i, n in enumerate(names)}
        with _sink(path) as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt_name!r}")
