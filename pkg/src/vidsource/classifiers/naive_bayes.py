"""Gaussian naive Bayes with maximum-likelihood class statistics.

Per-class feature values are sorted before accumulation so the fitted
means and variances are invariant to the row order of the training
data (float summation order is fixed by value, not by position).
"""

import numpy as np

from ..dataset import LabeledDataset
from .base import (ClassifierKind, NaiveBayesParams, TrainedModel,
                   check_trainable, params_dict)


def train_naive_bayes(dataset: LabeledDataset, params: NaiveBayesParams,
                      seed: int) -> TrainedModel:
    check_trainable(dataset)
    x = dataset.rows
    y = dataset.label_indices()
    n, d = x.shape
    n_classes = len(dataset.class_set)
    priors = []
    means = []
    variances = []
    for c in range(n_classes):
        block = x[y == c]
        priors.append(block.shape[0] / n)
        cols = np.sort(block, axis=0)
        mu = cols.sum(axis=0) / block.shape[0]
        centered = np.sort((cols - mu[None, :]) ** 2, axis=0)
        var = centered.sum(axis=0) / block.shape[0]
        means.append(mu)
        variances.append(np.maximum(var, params.var_floor))
    return TrainedModel(
        kind=ClassifierKind.NAIVE_BAYES,
        feature_subset=list(dataset.feature_names),
        class_set=list(dataset.class_set),
        seed=seed,
        hyperparams=params_dict(params),
        parameters={
            "priors": [float(p) for p in priors],
            "means": [[float(v) for v in mu] for mu in means],
            "variances": [[float(v) for v in var] for var in variances],
        },
    )


def predict_naive_bayes(model: TrainedModel, row: np.ndarray) -> int:
    priors = np.asarray(model.parameters["priors"])
    means = np.asarray(model.parameters["means"])
    variances = np.asarray(model.parameters["variances"])
    log_like = -0.5 * (np.log(2.0 * np.pi * variances)
                       + (row[None, :] - means) ** 2 / variances)
    scores = np.log(priors) + log_like.sum(axis=1)
    return int(np.argmax(scores))
