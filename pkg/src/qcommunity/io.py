"""JSON/CSV readers and writers for Hamiltonians, partitions and results.

Hamiltonian files are single JSON documents::

    {"n": 3, "hermiticity_tol": 1e-9, "real": [[...], ...], "imag": [[...], ...]}

``imag`` may be omitted for real matrices. Floats are written with Python's
shortest round-trip representation, so save followed by load is bit-exact.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError
from .hermitian import validate_hermitian
from .partition import Dendrogram, Partition

DEFAULT_HERMITICITY_TOL = 1e-9


def _read_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _matrix_block(doc, key: str, n: int, path) -> np.ndarray:
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{path}: field '{key}' must be a list of {n} rows")
    out = np.empty((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise ParseError(f"{path}: field '{key}' row {i} has {got} entries, expected {n}")
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"{path}: field '{key}' row {i} column {j} is not a number: {value!r}")
            out[i, j] = value
    return out


def load_hamiltonian(path) -> np.ndarray:
    """Read a Hamiltonian file and return the validated complex matrix.

    Raises
    ------
    ParseError
        On unreadable files, invalid JSON or malformed fields.
    HermiticityError
        If the matrix is not Hermitian within the file's ``hermiticity_tol``
        (default 1e-9).
    """
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    for key in ("n", "real"):
        if key not in doc:
            raise ParseError(f"{path}: missing field '{key}'")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"{path}: field 'n' must be a positive integer, got {n!r}")
    tol = doc.get("hermiticity_tol", DEFAULT_HERMITICITY_TOL)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise ParseError(f"{path}: field 'hermiticity_tol' must be a positive number, got {tol!r}")
    M = _matrix_block(doc, "real", n, path).astype(complex)
    if doc.get("imag") is not None:
        M = M + 1j * _matrix_block(doc, "imag", n, path)
    return validate_hermitian(M, tol)


def save_hamiltonian(H, path, hermiticity_tol: float = DEFAULT_HERMITICITY_TOL, metadata=None) -> None:
    H = np.asarray(H, dtype=complex)
    doc = {"n": int(H.shape[0]), "hermiticity_tol": hermiticity_tol, "real": H.real.tolist()}
    if np.any(H.imag):
        doc["imag"] = H.imag.tolist()
    if metadata is not None:
        doc["metadata"] = metadata
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def partition_to_json(X: Partition, modularity=None, measure=None, regime=None, seed=None, metadata=None) -> dict:
    doc = {
        "labels": list(X.labels),
        "modularity": modularity,
        "measure": measure,
        "regime": regime,
        "seed": seed,
    }
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def save_partition(path, X: Partition, modularity=None, measure=None, regime=None, seed=None, metadata=None) -> None:
    doc = partition_to_json(X, modularity, measure, regime, seed, metadata)
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_partition(path) -> Partition:
    doc = _read_json(path)
    labels = doc.get("labels") if isinstance(doc, dict) else None
    if not isinstance(labels, list) or not labels:
        raise ParseError(f"{path}: missing or empty 'labels' list")
    for i, lab in enumerate(labels):
        if isinstance(lab, bool) or not isinstance(lab, int):
            raise ParseError(f"{path}: label {i} is not an integer: {lab!r}")
    return Partition(tuple(labels))


def dendrogram_to_json(d: Dendrogram) -> list[dict]:
    """Ordered merge list ``[{"step": s, "closeness": c, "merged": [[node ids], ...]}, ...]``.

    A simultaneous tied merge contributes one entry per joined group, all
    sharing the same `step`.
    """
    out = []
    for step, m in enumerate(d.merges):
        for group in m.groups:
            out.append({"step": step, "closeness": m.closeness, "merged": [list(comm) for comm in group]})
    return out


def save_dendrogram(path, d: Dendrogram, metadata=None) -> None:
    doc = {"metadata": metadata, "merges": dendrogram_to_json(d)}
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def _comment_line(metadata) -> str:
    return "# " + json.dumps(metadata, sort_keys=True) + "\n"


def save_matrix_csv(path, values, metadata=None) -> None:
    """n x n matrix with a header row of node ids; metadata goes in a leading ``#`` line."""
    values = np.asarray(values, dtype=float)
    with open(path, "w", newline="") as fh:
        if metadata is not None:
            fh.write(_comment_line(metadata))
        writer = csv.writer(fh)
        writer.writerow(range(values.shape[1]))
        for row in values:
            writer.writerow(repr(float(v)) for v in row)


def save_table_csv(path, header, rows, metadata=None) -> None:
    with open(path, "w", newline="") as fh:
        if metadata is not None:
            fh.write(_comment_line(metadata))
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(_cell(v) for v in row)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float) and math.isfinite(v):
        return repr(v)
    return v
