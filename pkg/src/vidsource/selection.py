"""Filter-style feature selection: two rankings and their intersection.

Each evaluator scores every feature on the training set:

* ``correlation`` — class-frequency-weighted mean of the absolute
  Pearson correlation between the feature column and each one-vs-rest
  class indicator (zero-variance columns score 0);
* ``oner`` — training accuracy of the single-feature OneR rule.

Features are ranked by descending score with ties kept in canonical
feature order.  The selected set is the intersection of the two top-k
lists, reported in canonical feature order.
"""

import json
from dataclasses import dataclass

import numpy as np

from .classifiers.oner import build_rule
from .dataset import LabeledDataset
from .errors import InvalidParameterError, SchemaVersionError, SelectionError

SELECTION_SCHEMA_VERSION = 1
DEFAULT_TOP_K = 30


@dataclass(frozen=True)
class FeatureRanking:
    evaluator: str
    names: tuple    # feature names, best first
    scores: tuple   # matching scores

    def top(self, k: int) -> tuple:
        return self.names[:k]


@dataclass(frozen=True)
class SelectedFeatureSet:
    k: int
    rankings: tuple           # the FeatureRanking pair that produced this
    names: tuple              # intersection, canonical feature order


def _ranked(evaluator: str, feature_names, scores) -> FeatureRanking:
    scores = np.asarray(scores, dtype=float)
    order = np.argsort(-scores, kind="stable")
    return FeatureRanking(
        evaluator=evaluator,
        names=tuple(feature_names[i] for i in order),
        scores=tuple(float(scores[i]) for i in order),
    )


def _abs_pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    den = np.sqrt(np.sum(xc * xc) * np.sum(yc * yc))
    if den == 0.0:
        return 0.0
    return abs(float(np.sum(xc * yc) / den))


def correlation_rank(dataset: LabeledDataset) -> FeatureRanking:
    y = dataset.label_indices()
    n = dataset.n_rows
    scores = []
    for j in range(len(dataset.feature_names)):
        col = dataset.rows[:, j]
        score = 0.0
        for c in range(len(dataset.class_set)):
            indicator = (y == c).astype(float)
            prior = indicator.sum() / n
            score += prior * _abs_pearson(col, indicator)
        scores.append(score)
    return _ranked("correlation", dataset.feature_names, scores)


def oner_rank(dataset: LabeledDataset, min_bucket: int = 6) -> FeatureRanking:
    y = dataset.label_indices()
    n_classes = len(dataset.class_set)
    scores = [
        build_rule(dataset.rows[:, j], y, n_classes, min_bucket).accuracy
        for j in range(len(dataset.feature_names))
    ]
    return _ranked("oner", dataset.feature_names, scores)


def select_intersection(dataset: LabeledDataset,
                        k: int = DEFAULT_TOP_K) -> SelectedFeatureSet:
    if not 1 <= k <= len(dataset.feature_names):
        raise InvalidParameterError(
            f"k must be in [1, {len(dataset.feature_names)}], got {k}")
    first = correlation_rank(dataset)
    second = oner_rank(dataset)
    top_first = first.top(k)
    top_second = second.top(k)
    common = set(top_first) & set(top_second)
    if not common:
        raise SelectionError(
            f"empty intersection of top-{k} lists; "
            f"correlation={list(top_first)} oner={list(top_second)}")
    names = tuple(name for name in dataset.feature_names if name in common)
    return SelectedFeatureSet(k=k, rankings=(first, second), names=names)


def selection_to_json(selected: SelectedFeatureSet) -> str:
    payload = {
        "schema_version": SELECTION_SCHEMA_VERSION,
        "k": selected.k,
        "rankings": {
            ranking.evaluator: [[name, score] for name, score
                                in zip(ranking.names, ranking.scores)]
            for ranking in selected.rankings
        },
        "selected": list(selected.names),
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save_selection(selected: SelectedFeatureSet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(selection_to_json(selected))


def load_selection(path) -> SelectedFeatureSet:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("schema_version")
    if version != SELECTION_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"selection schema version {version!r} unsupported "
            f"(expected {SELECTION_SCHEMA_VERSION})")
    rankings = tuple(
        FeatureRanking(evaluator=name,
                       names=tuple(entry[0] for entry in entries),
                       scores=tuple(float(entry[1]) for entry in entries))
        for name, entries in sorted(payload["rankings"].items()))
    return SelectedFeatureSet(k=payload["k"], rankings=rankings,
                              names=tuple(payload["selected"]))
