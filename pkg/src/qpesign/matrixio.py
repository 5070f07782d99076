"""File formats: matrix JSON, labeled sample files, per-record JSONL."""
from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .hermitian import DEFAULT_ATOL, HermitianMatrix, LabeledMatrix, validate_hermitian
from .labels import CanonicalClass


class FormatError(ValueError):
    pass


def matrix_to_dict(m: HermitianMatrix, label: Optional[CanonicalClass] = None) -> dict:
    """{"dim": d, "entries": [[[re, im], ...], ...]} plus an optional label.

    Entries are written as [real, imag] pairs row by row; json renders the
    floats with repr so a write/read round trip is exact.
    """
    d = int(m.original_dim)
    block = m.entries[:d, :d]
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in block]
    out = {"dim": d, "entries": rows}
    if label is not None:
        out["label"] = label.value
    return out


def matrix_from_dict(obj: dict, atol: float = DEFAULT_ATOL) -> tuple[HermitianMatrix, Optional[CanonicalClass]]:
    if not isinstance(obj, dict):
        raise FormatError("matrix record must be a JSON object")
    try:
        dim = int(obj["dim"])
        rows = obj["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"matrix record missing dim/entries: {e}") from e
    if not isinstance(rows, list) or len(rows) != dim:
        raise FormatError(f"expected {dim} rows, got {len(rows) if isinstance(rows, list) else type(rows)}")
    try:
        entries = np.array(
            [[complex(c[0], c[1]) for c in row] for row in rows], dtype=np.complex128
        )
    except (TypeError, ValueError, IndexError) as e:
        raise FormatError(f"entries must be [re, im] pairs: {e}") from e
    if entries.shape != (dim, dim):
        raise FormatError(f"entries shape {entries.shape} does not match dim {dim}")
    label = None
    if "label" in obj:
        try:
            label = CanonicalClass(obj["label"])
        except ValueError as e:
            raise FormatError(f"unknown label {obj['label']!r}") from e
    return validate_hermitian(entries, atol), label


def read_matrix_file(path, atol: float = DEFAULT_ATOL) -> tuple[HermitianMatrix, Optional[CanonicalClass]]:
    """Single matrix object from a JSON file."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON: {e}") from e
    return matrix_from_dict(obj, atol)


def write_matrix_file(path, m: HermitianMatrix, label: Optional[CanonicalClass] = None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(matrix_to_dict(m, label), f)
        f.write("\n")


def write_sample(path, sample: list[LabeledMatrix]) -> None:
    """Labeled sample file: a JSON array of matrix records with labels."""
    payload = [matrix_to_dict(lm.matrix, lm.label) for lm in sample]
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f)
        f.write("\n")


def read_sample(path, atol: float = DEFAULT_ATOL) -> list[LabeledMatrix]:
    with open(path, "r", encoding="utf-8") as f:
        try:
            payload = json.load(f)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON: {e}") from e
    if not isinstance(payload, list):
        raise FormatError(f"{path}: sample file must hold a JSON array")
    out = []
    for i, obj in enumerate(payload):
        m, label = matrix_from_dict(obj, atol)
        if label is None:
            raise FormatError(f"{path}: record {i} has no label")
        out.append(LabeledMatrix(m, label))
    return out


def write_records_jsonl(path, records: list[dict]) -> None:
    """One JSON object per line; keys are written in insertion order."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for rec in records:
            f.write(json.dumps(rec))
            f.write("\n")


def read_records_jsonl(path) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out
