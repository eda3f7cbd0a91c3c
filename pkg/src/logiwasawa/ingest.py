"""Reading and writing the CSV/JSON exchange formats."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .fitting import ExponentSequence, exponent_of


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_sequence_csv(text: str, ell: int) -> ExponentSequence:
    """Parse ``n,e`` or ``n,order`` CSV; blank lines and ``#`` comments are skipped.

    Indices must be consecutive.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header = [h.strip().lower() for h in next(reader, [])]
    if len(header) != 2 or header[0] != "n" or header[1] not in ("e", "order"):
        raise ValueError(f"expected header 'n,e' or 'n,order', got {','.join(header)!r}")
    rows = []
    for rec in reader:
        if len(rec) != 2:
            raise ValueError(f"bad row {rec!r}")
        n, x = int(rec[0]), int(rec[1])
        rows.append((n, exponent_of(x, ell) if header[1] == "order" else x))
    if not rows:
        raise ValueError("no data rows")
    rows.sort()
    ns = [n for n, _ in rows]
    if ns != list(range(ns[0], ns[0] + len(ns))):
        raise ValueError("indices must be consecutive")
    return ExponentSequence(ell, [x for _, x in rows], ns[0])


def read_sequence_csv(path, ell: int) -> ExponentSequence:
    return parse_sequence_csv(Path(path).read_text(), ell)


def sequence_csv(rows) -> str:
    return "n,e\n" + "".join(f"{n},{e}\n" for n, e in rows)
