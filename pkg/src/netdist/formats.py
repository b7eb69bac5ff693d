"""File formats: network JSON/CSV/edge lists, distance-matrix CSV, dendrogram
JSON and Newick.

Network files store ``weights[i][j] = w(x_i, x_j)`` (row = source node).
Floats are written with ``repr`` so every value reads back bit-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .analysis import Dendrogram, DistanceMatrix
from .core import Network

__all__ = [
    "ParseError",
    "load_network",
    "parse_network_json",
    "parse_network_csv",
    "parse_edge_list",
    "network_to_json",
    "network_to_csv",
    "save_network",
    "matrix_to_csv",
    "parse_matrix_csv",
    "dendrogram_to_json",
    "parse_dendrogram_json",
    "dendrogram_to_newick",
    "newick_heights",
    "atomic_write",
]


class ParseError(ValueError):
    pass


def _num(x) -> str:
    return repr(float(x))


def _finite(value, where):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: {value!r} is not a number") from None
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite weight {value!r}")
    return v


def _build(weights, labels, source) -> Network:
    try:
        return Network(weights, tuple(labels))
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None


def parse_network_json(text: str, source: str = "<json>") -> Network:
    try:
        doc = json.loads(text, parse_constant=lambda c: float(c))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "weights" not in doc:
        raise ParseError(f"{source}: expected an object with a 'weights' array")
    rows = doc["weights"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{source}: 'weights' must be a list of rows")
    w = [[_finite(v, f"{source} row {i}") for v in row] for i, row in enumerate(rows)]
    labels = doc.get("labels") or [f"n{i}" for i in range(len(w))]
    return _build(w, labels, source)


def parse_network_csv(text: str, source: str = "<csv>") -> Network:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    w = [[_finite(c.strip(), f"{source} row {i}") for c in row] for i, row in enumerate(rows)]
    return _build(w, [f"n{i}" for i in range(len(w))], source)


def parse_edge_list(text: str, missing: float = 0.0, source: str = "<edges>") -> Network:
    """TSV ``src<TAB>dst<TAB>weight`` lines; unlisted pairs get ``missing``."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise ParseError(f"{source}:{lineno}: expected 3 tab-separated fields")
        edges.append((parts[0], parts[1], _finite(parts[2], f"{source}:{lineno}")))
    if not edges:
        raise ParseError(f"{source}: no edges")
    nodes = sorted({e[0] for e in edges} | {e[1] for e in edges})
    pos = {name: k for k, name in enumerate(nodes)}
    w = np.full((len(nodes), len(nodes)), float(missing))
    for s, d, v in edges:
        w[pos[s], pos[d]] = v
    return _build(w, nodes, source)


def load_network(path, missing: float = 0.0) -> Network:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    suffix = path.suffix.lower()
    if suffix == ".json":
        return parse_network_json(text, str(path))
    if suffix in (".tsv", ".edges", ".txt"):
        return parse_edge_list(text, missing, str(path))
    return parse_network_csv(text, str(path))


def network_to_json(X: Network) -> str:
    rows = ",\n    ".join("[" + ", ".join(_num(v) for v in row) + "]" for row in X.weights)
    return '{\n  "labels": %s,\n  "weights": [\n    %s\n  ]\n}\n' % (json.dumps(list(X.labels)), rows)


def network_to_csv(X: Network) -> str:
    return "".join(",".join(_num(v) for v in row) + "\n" for row in X.weights)


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_network(X: Network, path) -> None:
    path = Path(path)
    text = network_to_csv(X) if path.suffix.lower() == ".csv" else network_to_json(X)
    atomic_write(path, text)


# -- distance matrices and dendrograms ---------------------------------------

def matrix_to_csv(D: DistanceMatrix) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([""] + list(D.labels))
    for label, row in zip(D.labels, D.values):
        writer.writerow([label] + [_num(v) for v in row])
    return out.getvalue()


def parse_matrix_csv(text: str, source: str = "<matrix>") -> DistanceMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 2:
        raise ParseError(f"{source}: need a header row and at least one data row")
    labels = rows[0][1:]
    body = rows[1:]
    if [r[0] for r in body] != labels or any(len(r) != len(labels) + 1 for r in body):
        raise ParseError(f"{source}: row labels must match the header and rows must be complete")
    vals = [[_finite(c, f"{source} row {r[0]}") for c in r[1:]] for r in body]
    try:
        return DistanceMatrix(tuple(labels), np.array(vals))
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None


def dendrogram_to_json(d: Dendrogram) -> str:
    merges = ", ".join(f"[{a}, {b}, {_num(h)}]" for a, b, h in d.merges)
    return '{"labels": %s, "merges": [%s]}\n' % (json.dumps(list(d.labels)), merges)


def parse_dendrogram_json(text: str) -> Dendrogram:
    doc = json.loads(text)
    return Dendrogram(tuple((int(a), int(b), float(h)) for a, b, h in doc["merges"]), tuple(doc["labels"]))


def _newick_name(label: str) -> str:
    if any(c in label for c in " ()[]':;,"):
        return "'" + label.replace("'", "''") + "'"
    return label


def dendrogram_to_newick(d: Dendrogram) -> str:
    """Ultrametric Newick: branch length = parent height - child height."""
    k = len(d.labels)
    text = {i: _newick_name(lab) for i, lab in enumerate(d.labels)}
    height = {i: 0.0 for i in range(k)}
    for r, (a, b, h) in enumerate(d.merges):
        text[k + r] = f"({text.pop(a)}:{_num(h - height[a])},{text.pop(b)}:{_num(h - height[b])})"
        height[k + r] = h
    return text[2 * k - 2] + ";\n"


def newick_heights(newick: str) -> list[float]:
    """Heights of internal nodes (sorted), recovered as leaf-to-node path
    lengths; inverse of :func:`dendrogram_to_newick` for ultrametric trees."""
    s = newick.strip().rstrip(";")
    pos = 0
    heights = []

    def length():
        nonlocal pos
        if pos < len(s) and s[pos] == ":":
            start = pos = pos + 1
            while pos < len(s) and s[pos] not in ",()":
                pos += 1
            return float(s[start:pos])
        return 0.0

    def node():
        # returns the height of this node (distance to its leaves)
        nonlocal pos
        if s[pos] == "(":
            pos += 1
            child_heights = []
            while True:
                h = node()
                child_heights.append(h + length())
                if s[pos] == ",":
                    pos += 1
                    continue
                pos += 1  # ')'
                break
            h = child_heights[0]
            heights.append(h)
            return h
        if s[pos] == "'":
            pos += 1
            while not (s[pos] == "'" and (pos + 1 >= len(s) or s[pos + 1] != "'")):
                pos += 2 if s[pos] == "'" else 1
            pos += 1
        else:
            while pos < len(s) and s[pos] not in ":,()":
                pos += 1
        return 0.0

    node()
    return sorted(heights)
