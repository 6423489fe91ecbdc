"""Clip-stratified cross-validation and accuracy reporting.

Folds partition *clips*, never frames, so frames from one clip cannot
appear on both sides of a split.  Stratification is per class: each
class's clips are shuffled with a seeded generator and dealt round-robin
across folds, so per-class clip counts in any two folds differ by at
most one.  Test predictions are pooled over folds into micro-averaged
confusion matrices at two levels: per frame, and per clip (majority
vote over the clip's frames, ties to the lowest canonical class index).

Per-class precision, recall and F-measure come straight from the pooled
confusion counts, with empty denominators scored as zero.  The
``overall`` row is micro-averaged, which for single-label multiclass
classification equals plain accuracy.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import classifiers
from .dataset import LabeledDataset
from .errors import InvalidInputError, InvalidParameterError, SchemaVersionError
from .seeds import derive_seed, make_rng

REPORT_SCHEMA_VERSION = 1
DEFAULT_FOLDS = 10


def stratified_clip_folds(dataset: LabeledDataset, n_folds: int,
                          seed: int) -> list:
    """Partition clip ids into ``n_folds`` per-class balanced folds."""
    if n_folds < 2:
        raise InvalidParameterError(f"n_folds must be >= 2, got {n_folds}")
    clip_labels = dataset.clips()
    by_class = {label: [] for label in dataset.class_set}
    for clip_id in sorted(clip_labels):
        by_class[clip_labels[clip_id]].append(clip_id)
    folds = [[] for _ in range(n_folds)]
    for c, label in enumerate(dataset.class_set):
        clips = by_class[label]
        if len(clips) < n_folds:
            raise InvalidInputError(
                f"class {label!r} has {len(clips)} clip(s), fewer than "
                f"{n_folds} folds")
        rng = make_rng(seed, "folds", label)
        order = rng.permutation(len(clips))
        for i, j in enumerate(order):
            folds[(c + i) % n_folds].append(clips[j])
    return [sorted(fold) for fold in folds]


def confusion_matrix(class_set, true_labels, predicted_labels) -> np.ndarray:
    index = {label: i for i, label in enumerate(class_set)}
    matrix = np.zeros((len(class_set), len(class_set)), dtype=int)
    for truth, guess in zip(true_labels, predicted_labels):
        matrix[index[truth], index[guess]] += 1
    return matrix


def class_metrics(matrix: np.ndarray) -> list:
    """Per-class (precision, recall, f_measure) with 0/0 scored as 0."""
    matrix = np.asarray(matrix)
    out = []
    for c in range(matrix.shape[0]):
        tp = float(matrix[c, c])
        col = float(matrix[:, c].sum())
        row = float(matrix[c, :].sum())
        precision = tp / col if col > 0 else 0.0
        recall = tp / row if row > 0 else 0.0
        f_measure = (2.0 * precision * recall / (precision + recall)
                     if precision + recall > 0 else 0.0)
        out.append((precision, recall, f_measure))
    return out


def overall_accuracy(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix)
    total = float(matrix.sum())
    return float(np.trace(matrix)) / total if total > 0 else 0.0


@dataclass
class EvaluationReport:
    classifier: str
    seed: int
    n_folds: int        # 0 for a plain holdout evaluation
    class_set: list
    fold_clips: list    # clip ids per fold (single entry for holdout)
    frame_confusion: list
    clip_confusion: list

    def accuracy(self, level: str = "frame") -> float:
        return overall_accuracy(self._matrix(level))

    def metrics(self, level: str = "frame") -> dict:
        matrix = self._matrix(level)
        per_class = class_metrics(matrix)
        return {
            label: {"precision": p, "recall": r, "f_measure": f}
            for label, (p, r, f) in zip(self.class_set, per_class)
        }

    def _matrix(self, level: str) -> np.ndarray:
        if level == "frame":
            return np.asarray(self.frame_confusion)
        if level == "clip":
            return np.asarray(self.clip_confusion)
        raise InvalidParameterError(f"unknown report level {level!r}")

    def to_json(self) -> str:
        payload = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "classifier": self.classifier,
            "seed": self.seed,
            "n_folds": self.n_folds,
            "class_set": list(self.class_set),
            "fold_clips": [list(fold) for fold in self.fold_clips],
            "confusion": {
                "frame": [list(map(int, row)) for row in self.frame_confusion],
                "clip": [list(map(int, row)) for row in self.clip_confusion],
            },
            "metrics": {
                level: {
                    "per_class": self.metrics(level),
                    "overall_accuracy": self.accuracy(level),
                }
                for level in ("frame", "clip")
            },
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> EvaluationReport:
    payload = json.loads(text)
    version = payload.get("schema_version")
    if version != REPORT_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"report schema version {version!r} unsupported "
            f"(expected {REPORT_SCHEMA_VERSION})")
    return EvaluationReport(
        classifier=payload["classifier"],
        seed=payload["seed"],
        n_folds=payload["n_folds"],
        class_set=list(payload["class_set"]),
        fold_clips=[list(fold) for fold in payload["fold_clips"]],
        frame_confusion=payload["confusion"]["frame"],
        clip_confusion=payload["confusion"]["clip"],
    )


def metrics_csv(report: EvaluationReport) -> str:
    """Per-class metric table; the ``overall`` row is micro-averaged."""
    lines = ["scope,label,precision,recall,f_measure"]
    for level in ("frame", "clip"):
        per_class = report.metrics(level)
        for label in report.class_set:
            m = per_class[label]
            lines.append(f"{level},{label},{m['precision']!r},"
                         f"{m['recall']!r},{m['f_measure']!r}")
        acc = report.accuracy(level)
        lines.append(f"{level},overall,{acc!r},{acc!r},{acc!r}")
    return "\n".join(lines) + "\n"


def _subset_by_clips(dataset: LabeledDataset, clip_ids) -> LabeledDataset:
    wanted = set(clip_ids)
    mask = np.array([cid in wanted for cid in dataset.clip_ids])
    return LabeledDataset(
        feature_names=list(dataset.feature_names),
        rows=dataset.rows[mask],
        labels=[l for l, keep in zip(dataset.labels, mask) if keep],
        clip_ids=[c for c, keep in zip(dataset.clip_ids, mask) if keep],
    )


def _score_clips(model, dataset: LabeledDataset, clip_ids, class_set,
                 frame_matrix, clip_matrix) -> None:
    clip_labels = dataset.clips()
    index = {label: i for i, label in enumerate(class_set)}
    for clip_id in sorted(clip_ids):
        rows = dataset.rows_of_clip(clip_id)
        truth = index[clip_labels[clip_id]]
        votes = np.zeros(len(class_set), dtype=int)
        for label in classifiers.predict_rows(model, rows):
            guess = index[label]
            frame_matrix[truth, guess] += 1
            votes[guess] += 1
        clip_matrix[truth, int(np.argmax(votes))] += 1


def cross_validate(dataset: LabeledDataset, kind, n_folds: int, seed: int,
                   params=None) -> EvaluationReport:
    folds = stratified_clip_folds(dataset, n_folds, seed)
    n_classes = len(dataset.class_set)
    frame_matrix = np.zeros((n_classes, n_classes), dtype=int)
    clip_matrix = np.zeros((n_classes, n_classes), dtype=int)
    for i, fold in enumerate(folds):
        train_set = _subset_by_clips(
            dataset, [c for j, f in enumerate(folds) if j != i for c in f])
        model = classifiers.train(kind, train_set,
                                  derive_seed(seed, "fold", i), params=params)
        _score_clips(model, dataset, fold, dataset.class_set,
                     frame_matrix, clip_matrix)
    return EvaluationReport(
        classifier=kind.value,
        seed=seed,
        n_folds=n_folds,
        class_set=list(dataset.class_set),
        fold_clips=folds,
        frame_confusion=frame_matrix.tolist(),
        clip_confusion=clip_matrix.tolist(),
    )


def evaluate_holdout(model, dataset: LabeledDataset) -> EvaluationReport:
    """Score an already-trained model on a held-out labeled dataset."""
    if list(model.feature_subset) != list(dataset.feature_names):
        raise InvalidInputError(
            "dataset features do not match the model's feature subset")
    unknown = [l for l in dataset.class_set if l not in model.class_set]
    if unknown:
        raise InvalidInputError(
            f"dataset has labels unknown to the model: {unknown}")
    n_classes = len(model.class_set)
    frame_matrix = np.zeros((n_classes, n_classes), dtype=int)
    clip_matrix = np.zeros((n_classes, n_classes), dtype=int)
    clip_ids = sorted(dataset.clips())
    _score_clips(model, dataset, clip_ids, model.class_set,
                 frame_matrix, clip_matrix)
    return EvaluationReport(
        classifier=model.kind.value,
        seed=model.seed,
        n_folds=0,
        class_set=list(model.class_set),
        fold_clips=[clip_ids],
        frame_confusion=frame_matrix.tolist(),
        clip_confusion=clip_matrix.tolist(),
    )
