"""Matrix / bicluster data model, deterministic RNG policy, and file I/O.

Everything downstream operates on :class:`ExpressionMatrix` (a labeled dense
matrix with a missing-value mask) and produces :class:`BiclusterSet` objects.
Bicluster files store row/column *labels*, not positions, so saved sets stay
valid across filtering; positions are resolved at load time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_MISSING_MARKERS = ("", "na", "nan")


class BiclustError(Exception):
    """Base class for all toolkit errors."""


class ParseError(BiclustError):
    """Malformed input file."""


class ValidationError(BiclustError):
    """Data violates a structural invariant."""


class ParameterError(BiclustError):
    """Algorithm / operation parameter out of range."""


class DomainError(BiclustError):
    """Input matrix outside the operation's domain (e.g. negative values)."""


class ConvergenceError(BiclustError):
    """Iterative procedure failed to converge within its budget."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UndefinedIndexError(BiclustError):
    """A validation index is undefined for the given inputs."""


class IncompleteDataError(BiclustError):
    """Missing values remain where complete data is required."""


def make_rng(seed: int) -> np.random.Generator:
    """Single entry point for randomness: one PCG64 stream per run seed."""
    if seed < 0:
        raise ParameterError("seed must be a non-negative integer")
    return np.random.default_rng(int(seed))


def derive_seed(seed: int, index: int) -> int:
    """Stable per-subtask seed (restarts, workers) derived from a run seed."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(index),))
    return int(ss.generate_state(1)[0])


@dataclass(frozen=True)
class ExpressionMatrix:
    """Labeled real matrix with a missing-value mask. Immutable after load."""

    row_ids: tuple
    col_ids: tuple
    values: np.ndarray
    missing_mask: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        mask = np.asarray(self.missing_mask, dtype=bool)
        object.__setattr__(self, "row_ids", tuple(str(r) for r in self.row_ids))
        object.__setattr__(self, "col_ids", tuple(str(c) for c in self.col_ids))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing_mask", mask)
        n_rows, n_cols = len(self.row_ids), len(self.col_ids)
        if n_rows < 1 or n_cols < 1:
            raise ValidationError("matrix must have at least one row and one column")
        if values.shape != (n_rows, n_cols):
            raise ValidationError(
                f"values shape {values.shape} does not match labels ({n_rows}, {n_cols})"
            )
        if mask.shape != values.shape:
            raise ValidationError("missing_mask shape does not match values")
        if len(set(self.row_ids)) != n_rows:
            raise ValidationError("duplicate row labels")
        if len(set(self.col_ids)) != n_cols:
            raise ValidationError("duplicate column labels")
        values.setflags(write=False)
        mask.setflags(write=False)

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def n_missing(self) -> int:
        return int(self.missing_mask.sum())

    def require_complete(self, context: str = "this operation"):
        if self.missing_mask.any():
            raise IncompleteDataError(
                f"{context} requires a matrix without missing values; "
                f"run filtering first ({self.n_missing} missing cells)"
            )

    @classmethod
    def from_values(cls, values, row_ids=None, col_ids=None) -> "ExpressionMatrix":
        values = np.asarray(values, dtype=float)
        if values.ndim != 2:
            raise ValidationError("values must be 2-dimensional")
        n, m = values.shape
        if row_ids is None:
            row_ids = [f"g{i}" for i in range(n)]
        if col_ids is None:
            col_ids = [f"c{j}" for j in range(m)]
        return cls(tuple(row_ids), tuple(col_ids), values, np.zeros((n, m), dtype=bool))


@dataclass(frozen=True)
class Bicluster:
    """A pair of index sets (rows, cols) into a matrix, with optional score."""

    rows: tuple
    cols: tuple
    score: Optional[float] = None

    def __post_init__(self):
        rows = tuple(int(i) for i in self.rows)
        cols = tuple(int(j) for j in self.cols)
        for name, idx in (("rows", rows), ("cols", cols)):
            if len(idx) == 0:
                raise ValidationError(f"bicluster {name} must be nonempty")
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValidationError(f"bicluster {name} must be strictly increasing")
            if idx[0] < 0:
                raise ValidationError(f"bicluster {name} contain negative indices")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_sets(cls, rows: Iterable[int], cols: Iterable[int], score=None) -> "Bicluster":
        return cls(tuple(sorted(set(int(i) for i in rows))),
                   tuple(sorted(set(int(j) for j in cols))), score)

    def validate_against(self, m: ExpressionMatrix):
        n, p = m.shape
        if self.rows[-1] >= n or self.cols[-1] >= p:
            raise ValidationError(
                f"bicluster indices out of bounds for matrix of shape {m.shape}"
            )

    @property
    def n_cells(self) -> int:
        return len(self.rows) * len(self.cols)

    def cells(self) -> set:
        return {(i, j) for i in self.rows for j in self.cols}


@dataclass
class BiclusterSet:
    """Algorithm identity, parameters, seed, and ordered list of biclusters."""

    algorithm: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    biclusters: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.biclusters)

    def validate_against(self, m: ExpressionMatrix):
        for b in self.biclusters:
            b.validate_against(m)

    def __eq__(self, other):
        if not isinstance(other, BiclusterSet):
            return NotImplemented
        return (self.algorithm == other.algorithm
                and self.params == other.params
                and int(self.seed) == int(other.seed)
                and self.biclusters == other.biclusters)


def extract_submatrix(m: ExpressionMatrix, b: Bicluster) -> np.ndarray:
    """Dense copy of the cells selected by a bicluster."""
    b.validate_against(m)
    return m.values[np.ix_(b.rows, b.cols)].copy()


def _parse_cell(text: str, missing_markers) -> tuple:
    if text.strip().lower() in missing_markers:
        return 0.0, True
    try:
        return float(text), False
    except ValueError:
        raise ParseError(f"cannot parse cell value {text!r}")


def load_matrix(path, delimiter: str = "\t",
                missing_markers: Sequence[str] = DEFAULT_MISSING_MARKERS) -> ExpressionMatrix:
    """Read a delimited matrix: header row of condition labels, first column gene labels."""
    markers = {str(s).strip().lower() for s in missing_markers}
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n").rstrip("\r") for ln in fh]
    lines = [ln for ln in lines if ln.strip() != ""]
    if not lines:
        raise ParseError(f"{path}: empty file")
    header = lines[0].split(delimiter)
    col_ids = [c.strip() for c in header[1:]]
    if len(col_ids) == 0:
        raise ValidationError(f"{path}: no data columns in header")
    row_ids, values, mask = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(delimiter)
        if len(parts) != len(col_ids) + 1:
            raise ParseError(
                f"{path}: line {lineno} has {len(parts) - 1} cells, expected {len(col_ids)}"
            )
        row_ids.append(parts[0].strip())
        row_vals, row_mask = [], []
        for cell in parts[1:]:
            try:
                v, miss = _parse_cell(cell, markers)
            except ParseError as e:
                raise ParseError(f"{path}: line {lineno}: {e}") from None
            row_vals.append(v)
            row_mask.append(miss)
        values.append(row_vals)
        mask.append(row_mask)
    if not row_ids:
        raise ValidationError(f"{path}: no data rows")
    return ExpressionMatrix(tuple(row_ids), tuple(col_ids),
                            np.array(values, dtype=float), np.array(mask, dtype=bool))


def save_matrix(m: ExpressionMatrix, path, delimiter: str = "\t",
                missing_marker: str = "NA"):
    """Write a matrix in the same delimited layout load_matrix reads."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(delimiter.join(["id", *m.col_ids]) + "\n")
        for i, rid in enumerate(m.row_ids):
            cells = [
                missing_marker if m.missing_mask[i, j] else repr(float(m.values[i, j]))
                for j in range(len(m.col_ids))
            ]
            fh.write(delimiter.join([rid, *cells]) + "\n")


def save_bicluster_set(s: BiclusterSet, path, matrix: Optional[ExpressionMatrix] = None):
    """Serialize a bicluster set as JSON, storing labels when a matrix is given.

    With a matrix, rows/cols are written as labels (robust to later filtering);
    without one, positional indices are written directly. Output is byte-stable
    for identical inputs.
    """
    doc = {
        "format": "biclustlab.bicluster_set.v1",
        "algorithm": s.algorithm,
        "params": s.params,
        "seed": int(s.seed),
        "n_biclusters": len(s.biclusters),
        "biclusters": [],
    }
    if matrix is not None:
        s.validate_against(matrix)
        doc["matrix_shape"] = list(matrix.shape)
        for b in s.biclusters:
            doc["biclusters"].append({
                "rows": [matrix.row_ids[i] for i in b.rows],
                "cols": [matrix.col_ids[j] for j in b.cols],
                "row_indices": list(b.rows),
                "col_indices": list(b.cols),
                "score": b.score,
            })
    else:
        for b in s.biclusters:
            doc["biclusters"].append({
                "row_indices": list(b.rows),
                "col_indices": list(b.cols),
                "score": b.score,
            })
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_bicluster_set(path, matrix: Optional[ExpressionMatrix] = None) -> BiclusterSet:
    """Load a bicluster set; with a matrix, labels are resolved to positions."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: not a valid bicluster-set file: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != "biclustlab.bicluster_set.v1":
        raise ParseError(f"{path}: unrecognized bicluster-set format")
    biclusters = []
    shape = doc.get("matrix_shape")
    for entry in doc.get("biclusters", []):
        if matrix is not None and "rows" in entry:
            try:
                rows = [matrix.row_ids.index(r) for r in entry["rows"]]
                cols = [matrix.col_ids.index(c) for c in entry["cols"]]
            except ValueError as e:
                raise ValidationError(f"{path}: label not present in matrix: {e}") from None
        else:
            rows = entry.get("row_indices")
            cols = entry.get("col_indices")
            if rows is None or cols is None:
                raise ParseError(f"{path}: bicluster entry missing indices")
        b = Bicluster.from_sets(rows, cols, entry.get("score"))
        if shape is not None and (b.rows[-1] >= shape[0] or b.cols[-1] >= shape[1]):
            raise ValidationError(
                f"{path}: bicluster index out of declared matrix bounds {shape}"
            )
        if matrix is not None:
            b.validate_against(matrix)
        biclusters.append(b)
    s = BiclusterSet(str(doc.get("algorithm", "")), dict(doc.get("params", {})),
                     int(doc.get("seed", 0)), biclusters)
    return s


def export_numerical_matrix(m: ExpressionMatrix, b: Bicluster, path, delimiter: str = "\t"):
    """Per-bicluster numerical matrix export as delimited text."""
    b.validate_against(m)
    sub = extract_submatrix(m, b)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(delimiter.join(["id", *(m.col_ids[j] for j in b.cols)]) + "\n")
        for p, i in enumerate(b.rows):
            fh.write(delimiter.join([m.row_ids[i], *(repr(float(v)) for v in sub[p])]) + "\n")
