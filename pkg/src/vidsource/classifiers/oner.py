"""OneR: a single-feature rule over value buckets.

Rule construction for one feature sorts the rows by (value, label) —
so the rule depends only on the multiset of (value, label) pairs, not
on row order — then walks buckets of at least ``min_bucket`` rows,
extending each bucket through ties so equal values never straddle a
boundary.  A remainder smaller than the minimum is absorbed into the
last bucket.  Adjacent buckets with the same majority class are merged
and thresholds are placed midway between neighbouring bucket edges.
A value exactly equal to a threshold falls in the left bucket.
"""

from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset
from .base import (ClassifierKind, OneRParams, TrainedModel, check_trainable,
                   params_dict)


@dataclass(frozen=True)
class OneRRule:
    thresholds: tuple  # ascending cut points, len(classes) - 1 of them
    classes: tuple     # majority class index per bucket
    accuracy: float    # training accuracy of the rule


def build_rule(values: np.ndarray, labels: np.ndarray, n_classes: int,
               min_bucket: int) -> OneRRule:
    values = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    n = values.size
    order = np.lexsort((labels, values))
    sv = values[order]
    sl = labels[order]

    bounds = []
    pos = 0
    while pos < n:
        end = min(pos + min_bucket, n)
        while end < n and sv[end] == sv[end - 1]:
            end += 1
        if n - end < min_bucket:
            end = n
        bounds.append((pos, end))
        pos = end

    buckets = []  # (start, end, majority)
    for start, end in bounds:
        majority = int(np.argmax(np.bincount(sl[start:end],
                                             minlength=n_classes)))
        if buckets and buckets[-1][2] == majority:
            buckets[-1] = (buckets[-1][0], end, majority)
        else:
            buckets.append((start, end, majority))

    correct = sum(int(np.sum(sl[start:end] == majority))
                  for start, end, majority in buckets)
    thresholds = tuple(
        0.5 * (sv[buckets[i][1] - 1] + sv[buckets[i + 1][0]])
        for i in range(len(buckets) - 1))
    return OneRRule(thresholds=thresholds,
                    classes=tuple(b[2] for b in buckets),
                    accuracy=correct / n)


def apply_rule(thresholds, classes, values: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(np.asarray(thresholds), np.asarray(values),
                          side="left")
    return np.asarray(classes)[idx]


def train_oner(dataset: LabeledDataset, params: OneRParams,
               seed: int) -> TrainedModel:
    check_trainable(dataset)
    y = dataset.label_indices()
    n_classes = len(dataset.class_set)
    best = None  # (accuracy, feature_index, rule)
    for j in range(len(dataset.feature_names)):
        rule = build_rule(dataset.rows[:, j], y, n_classes,
                          params.min_bucket)
        if best is None or rule.accuracy > best[0]:
            best = (rule.accuracy, j, rule)
    _, feature_index, rule = best
    return TrainedModel(
        kind=ClassifierKind.ONER,
        feature_subset=list(dataset.feature_names),
        class_set=list(dataset.class_set),
        seed=seed,
        hyperparams=params_dict(params),
        parameters={
            "feature_index": feature_index,
            "feature_name": dataset.feature_names[feature_index],
            "thresholds": [float(t) for t in rule.thresholds],
            "classes": [int(c) for c in rule.classes],
            "training_accuracy": float(rule.accuracy),
        },
    )


def predict_oner(model: TrainedModel, row: np.ndarray) -> int:
    value = row[model.parameters["feature_index"]]
    return int(apply_rule(model.parameters["thresholds"],
                          model.parameters["classes"], [value])[0])
