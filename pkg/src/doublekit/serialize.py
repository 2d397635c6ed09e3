"""Machine-readable output of modular data (JSON document, CSV directory)."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .exceptions import ParseError

__all__ = ["complex_pair", "modular_document", "dumps_json", "write_csv", "load_table"]


def _real(v):
    # collapse -0.0 so equal data always prints the same bytes
    return float(v) + 0.0


def complex_pair(z):
    return [_real(np.real(z)), _real(np.imag(z))]


def _matrix(M):
    return [[complex_pair(z) for z in row] for row in np.asarray(M)]


def label_record(l):
    return {
        "index": l.index,
        "class": l.A,
        "class_rep": l.class_rep,
        "class_size": l.class_size,
        "centralizer_order": l.centralizer_order,
        "alpha": l.alpha,
        "dim": l.dim,
        "n": l.n,
    }


def modular_document(G, D, data, report=None):
    """Assemble the output document as plain Python containers."""
    doc = {
        "group": {
            "name": G.name,
            "order": G.order,
            "class_sizes": [int(s) for s in D.class_data.sizes],
            "table": G.table.tolist(),
        },
        "labels": [label_record(l) for l in D.labels],
        "S": _matrix(data.S),
        "T": [complex_pair(z) for z in data.T],
        "U": _matrix(data.U),
        "fusion": data.fusion.tolist(),
    }
    if report is not None:
        doc["report"] = report.to_dict()
    return doc


def dumps_json(doc):
    """One top-level key per line; values are compact JSON."""
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"


def _cell(z):
    re, im = complex_pair(z)
    return f"{re!r}{'+' if im >= 0 else '-'}{abs(im)!r}j"


def write_csv(directory, D, data):
    """Write ``labels.csv``, ``S.csv``, ``T.csv``, ``U.csv`` and ``fusion.csv``.

    Matrix cells are Python complex literals such as ``0.5+0.0j``.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    L = len(D.labels)
    idx = [str(i) for i in range(L)]

    def emit(name, rows, header):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        (out / name).write_text(buf.getvalue())

    recs = [label_record(l) for l in D.labels]
    emit("labels.csv", [list(r.values()) for r in recs], list(recs[0]))
    for name, M in (("S.csv", data.S), ("U.csv", data.U)):
        emit(name, [[i] + [_cell(z) for z in row] for i, row in zip(idx, M)], ["label"] + idx)
    emit("T.csv", [[i, _cell(z)] for i, z in zip(idx, data.T)], ["label", "theta"])
    emit("fusion.csv", [[a, b] + list(data.fusion[a, b]) for a in range(L) for b in range(L)],
         ["a", "b"] + idx)
    return sorted(p.name for p in out.iterdir())


def load_table(path):
    """Read a multiplication table from a file.

    Accepts a JSON list of lists, a JSON output document of this package
    (its ``group.table``), or whitespace/comma separated integer rows.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read table file: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        try:
            rows = [line.replace(",", " ").split() for line in text.splitlines()]
            return [[int(v) for v in r] for r in rows if r and not r[0].startswith("#")]
        except ValueError as exc:
            raise ParseError(f"table file is neither JSON nor integer rows: {exc}") from exc
    if isinstance(obj, dict):
        try:
            obj = obj["group"]["table"]
        except (KeyError, TypeError) as exc:
            raise ParseError("JSON document has no group.table") from exc
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError("table must be a list of rows")
    return obj
