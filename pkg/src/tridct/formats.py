"""Plain-text file formats used by the command line tool.

Every CSV file starts with one comment line carrying a JSON header::

    # {"kind": "signal", "n": 3, "N": 6, "ordering": "node-lex-kj"}

followed by a column header row and the data rows. Floats are written with
17 significant digits so a write/read cycle is lossless.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

import numpy as np

from tridct.nodegrid import ORDERING as NODE_ORDERING
from tridct.nodegrid import NodeGrid, node_count
from tridct.xform import BASIS_ORDERING, TransformPlan, basis_order


class FormatError(ValueError):
    """A data file does not match the expected layout."""


def fmt(v: float) -> str:
    # + 0.0 turns -0.0 into 0.0 so outputs do not depend on the sign of zero.
    return "%.17g" % (float(v) + 0.0)


def _header_line(meta: dict) -> str:
    return "# " + json.dumps(meta, sort_keys=True) + "\n"


def _split_header(text: str):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise FormatError("missing JSON header comment on the first line")
    try:
        meta = json.loads(lines[0][1:])
    except json.JSONDecodeError as exc:
        raise FormatError(f"unreadable header: {exc}") from None
    if not isinstance(meta, dict):
        raise FormatError("header must be a JSON object")
    return meta, lines[1:]


# -- signals and spectra ----------------------------------------------------

SIGNAL = "signal"
SPECTRUM = "spectrum"
_ORDERING_OF = {SIGNAL: NODE_ORDERING, SPECTRUM: BASIS_ORDERING}


@dataclass
class VectorFile:
    kind: str
    n: int
    values: np.ndarray

    @property
    def ordering(self) -> str:
        return _ORDERING_OF[self.kind]


def write_vector(out: TextIO, kind: str, n: int, values: Iterable[float]) -> None:
    """Write a node signal or a basis spectrum."""
    values = np.asarray(list(values), dtype=float)
    N = node_count(n)
    if len(values) != N:
        raise FormatError(f"{kind} for n={n} needs {N} values, got {len(values)}")
    out.write(_header_line({"kind": kind, "n": n, "N": N, "ordering": _ORDERING_OF[kind]}))
    if kind == SPECTRUM:
        out.write("index,k,l,value\n")
        for i, (idx, v) in enumerate(zip(basis_order(n).indices, values)):
            out.write(f"{i},{idx.k},{idx.l},{fmt(v)}\n")
    else:
        out.write("index,value\n")
        for i, v in enumerate(values):
            out.write(f"{i},{fmt(v)}\n")


def read_vector(text: str, expect_kind: Optional[str] = None) -> VectorFile:
    """Parse and validate a signal/spectrum file."""
    meta, lines = _split_header(text)
    kind = meta.get("kind")
    if kind not in _ORDERING_OF:
        raise FormatError(f"unknown kind {kind!r}; expected 'signal' or 'spectrum'")
    if expect_kind is not None and kind != expect_kind:
        raise FormatError(f"expected a {expect_kind} file, got a {kind} file")
    n = meta.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"header field n must be a positive integer, got {n!r}")
    if meta.get("ordering", _ORDERING_OF[kind]) != _ORDERING_OF[kind]:
        raise FormatError(f"ordering {meta['ordering']!r} does not match kind {kind!r}")
    N = node_count(n)
    rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
    if not rows or "index" not in rows[0] or "value" not in rows[0]:
        raise FormatError("expected columns 'index' and 'value'")
    if len(rows) != N:
        raise FormatError(f"n={n} requires N={N} rows, found {len(rows)}")
    values = np.full(N, np.nan)
    seen = set()
    for row in rows:
        try:
            i = int(row["index"])
            v = float(row["value"])
        except (TypeError, ValueError):
            raise FormatError(f"malformed row {row!r}") from None
        if not 0 <= i < N:
            raise FormatError(f"index {i} out of range 0..{N - 1}")
        if i in seen:
            raise FormatError(f"duplicate index {i}")
        seen.add(i)
        values[i] = v
    return VectorFile(kind=kind, n=n, values=values)


# -- node tables ------------------------------------------------------------

NODE_COLUMNS = ["index", "k", "j", "theta1", "theta2", "x1", "x2"]


def write_nodes(out: TextIO, grid: NodeGrid) -> None:
    out.write(_header_line({"kind": "nodes", "n": grid.n, "N": len(grid), "ordering": grid.order}))
    out.write(",".join(NODE_COLUMNS) + "\n")
    for i in range(len(grid)):
        cells = [str(i), str(int(grid.k[i])), str(int(grid.j[i]))]
        cells += [fmt(v) for v in (grid.theta1[i], grid.theta2[i], grid.x1[i], grid.x2[i])]
        out.write(",".join(cells) + "\n")


def read_nodes(text: str):
    """Parse a node table; returns ``(meta, rows)`` with one dict per node."""
    meta, lines = _split_header(text)
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    if reader.fieldnames != NODE_COLUMNS:
        raise FormatError(f"expected columns {NODE_COLUMNS}, got {reader.fieldnames}")
    rows = [{key: (int(row[key]) if key in ("index", "k", "j") else float(row[key]))
             for key in NODE_COLUMNS} for row in reader]
    if len(rows) != meta.get("N", len(rows)):
        raise FormatError(f"header announces {meta['N']} nodes, found {len(rows)}")
    return meta, rows


# -- matrices ---------------------------------------------------------------

MATRICES = ("F", "Finv", "Forth", "H", "D")


def matrix_from_plan(plan: TransformPlan, which: str):
    """Return ``(matrix, row_ordering, col_ordering)`` for a named plan matrix."""
    if which == "F":
        return plan.F, BASIS_ORDERING, NODE_ORDERING
    if which == "Finv":
        return plan.F_inv, NODE_ORDERING, BASIS_ORDERING
    if which == "Forth":
        return plan.F_orth, BASIS_ORDERING, NODE_ORDERING
    if which == "H":
        return plan.H_oplus, BASIS_ORDERING, BASIS_ORDERING
    if which == "D":
        return plan.D, NODE_ORDERING, NODE_ORDERING
    raise KeyError(f"unknown matrix {which!r}; choose from {', '.join(MATRICES)}")


def _matrix_meta(plan: TransformPlan, which: str, rows: str, cols: str, shape) -> dict:
    return {"kind": "matrix", "matrix": which, "n": plan.n, "N": plan.N,
            "rows": rows, "cols": cols, "shape": list(shape)}


def write_matrix_csv(out: TextIO, plan: TransformPlan, which: str) -> None:
    m, rows, cols = matrix_from_plan(plan, which)
    out.write(_header_line(_matrix_meta(plan, which, rows, cols, m.shape)))
    out.write(",".join(f"c{j}" for j in range(m.shape[1])) + "\n")
    for row in m:
        out.write(",".join(fmt(v) for v in row) + "\n")


def write_matrix_json(out: TextIO, plan: TransformPlan, which: str) -> None:
    m, rows, cols = matrix_from_plan(plan, which)
    doc = _matrix_meta(plan, which, rows, cols, m.shape)
    doc["data"] = [[float(v) + 0.0 for v in row] for row in m]
    out.write(json.dumps(doc, sort_keys=True) + "\n")


def read_matrix(text: str):
    """Parse a matrix dump in either format; returns ``(meta, array)``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        data = np.array(doc.pop("data"), dtype=float)
        meta = doc
    else:
        meta, lines = _split_header(text)
        body = [ln for ln in lines[1:] if ln.strip()]
        data = np.array([[float(c) for c in ln.split(",")] for ln in body], dtype=float)
    shape = tuple(meta.get("shape", data.shape))
    if data.shape != shape:
        raise FormatError(f"matrix body has shape {data.shape}, header says {shape}")
    return meta, data
