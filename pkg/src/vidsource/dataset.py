"""Labeled feature matrices and their on-disk CSV form.

The feature matrix file is plain CSV: a header of canonical feature
names followed by ``label`` and ``clip_id``, then one row per frame
with every real serialized as shortest round-trip decimal text, so
``read(write(x))`` reproduces x exactly and reruns diff cleanly.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

_IDENT = re.compile(r"^[A-Za-z0-9_.:-]+$")


def _check_identifier(value: str, what: str) -> str:
    if not isinstance(value, str) or not _IDENT.match(value):
        raise InvalidInputError(
            f"{what} must match [A-Za-z0-9_.:-]+, got {value!r}")
    return value


@dataclass
class LabeledDataset:
    """Feature rows with class labels and originating clip identifiers."""

    feature_names: list
    rows: np.ndarray          # (n, d) float64
    labels: list              # n class labels
    clip_ids: list            # n clip identifiers

    class_set: list = field(init=False)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.feature_names):
            raise InvalidInputError(
                f"rows must be (n, {len(self.feature_names)}), got {self.rows.shape}")
        n = self.rows.shape[0]
        if len(self.labels) != n or len(self.clip_ids) != n:
            raise InvalidInputError("labels/clip_ids length must match row count")
        if n and not np.all(np.isfinite(self.rows)):
            bad = np.argwhere(~np.isfinite(self.rows))[0]
            raise InvalidInputError(
                f"non-finite value at row {bad[0]}, feature "
                f"{self.feature_names[bad[1]]!r}")
        for label in self.labels:
            _check_identifier(label, "label")
        for clip in self.clip_ids:
            _check_identifier(clip, "clip_id")
        self.class_set = sorted(set(self.labels))

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.feature_names.index(name)]

    def label_indices(self) -> np.ndarray:
        """Labels as indices into the ordered class set."""
        index = {label: i for i, label in enumerate(self.class_set)}
        return np.array([index[label] for label in self.labels], dtype=np.intp)

    def project(self, names) -> "LabeledDataset":
        """Restrict to the given feature columns, by name."""
        missing = [n for n in names if n not in self.feature_names]
        if missing:
            raise InvalidInputError(f"dataset lacks features: {missing}")
        cols = [self.feature_names.index(n) for n in names]
        return LabeledDataset(list(names), self.rows[:, cols],
                              list(self.labels), list(self.clip_ids))

    def rows_of_clip(self, clip_id: str) -> np.ndarray:
        mask = np.array([c == clip_id for c in self.clip_ids])
        return self.rows[mask]

    def clips(self) -> dict:
        """clip_id -> label for every clip, insertion-ordered."""
        out = {}
        for label, clip in zip(self.labels, self.clip_ids):
            if clip in out and out[clip] != label:
                raise InvalidInputError(f"clip {clip!r} appears under two labels")
            out[clip] = label
        return out


def format_real(value: float) -> str:
    """Shortest decimal text that round-trips to the same float64."""
    return repr(float(value))


def write_feature_csv(dataset: LabeledDataset, path) -> None:
    lines = [",".join(list(dataset.feature_names) + ["label", "clip_id"])]
    for row, label, clip in zip(dataset.rows, dataset.labels, dataset.clip_ids):
        lines.append(",".join([format_real(v) for v in row] + [label, clip]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_feature_csv(path) -> LabeledDataset:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise InvalidInputError(f"empty feature file: {path}")
    header = lines[0].split(",")
    if len(header) < 3 or header[-2:] != ["label", "clip_id"]:
        raise InvalidInputError(
            f"feature file header must end with label,clip_id: {path}")
    names = header[:-2]
    rows, labels, clips = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(header):
            raise InvalidInputError(
                f"{path}:{lineno}: expected {len(header)} fields, got {len(parts)}")
        rows.append([float(v) for v in parts[:-2]])
        labels.append(parts[-2])
        clips.append(parts[-1])
    matrix = np.array(rows, dtype=np.float64) if rows else np.empty((0, len(names)))
    return LabeledDataset(names, matrix, labels, clips)
