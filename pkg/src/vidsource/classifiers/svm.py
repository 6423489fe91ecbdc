"""Linear one-vs-rest SVM trained by projected subgradient descent.

Features are standardized (zero mean, unit variance; constant columns
keep scale 1) and the standardization is stored with the model.  Each
class gets a binary hinge-loss problem against the rest, solved by
full-batch subgradient steps on the regularized objective

    lambda/2 ||w||^2 + mean_i max(0, 1 - y_i (w.x_i))

with step size 1/(lambda * t) and projection onto the ball of radius
1/sqrt(lambda).  The bias is carried as an augmented constant feature,
so it is regularized along with the weights.  Training is full batch
from a zero start and therefore deterministic.
"""

import numpy as np

from ..dataset import LabeledDataset
from .base import (ClassifierKind, SvmParams, TrainedModel, check_trainable,
                   params_dict)


def _standardize_fit(x: np.ndarray):
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    return mean, scale


def train_svm(dataset: LabeledDataset, params: SvmParams,
              seed: int) -> TrainedModel:
    check_trainable(dataset)
    x = dataset.rows
    y = dataset.label_indices()
    n, d = x.shape
    n_classes = len(dataset.class_set)
    mean, scale = _standardize_fit(x)
    xa = np.column_stack([(x - mean) / scale, np.ones(n)])

    targets = np.where(y[:, None] == np.arange(n_classes)[None, :], 1.0, -1.0)
    lam = params.regularization
    radius = 1.0 / np.sqrt(lam)
    w = np.zeros((n_classes, d + 1))
    for t in range(1, params.epochs + 1):
        eta = 1.0 / (lam * t)
        margins = targets * (xa @ w.T)                       # (n, C)
        viol = (margins < 1.0).astype(float)
        grad = lam * w - ((viol * targets).T @ xa) / n       # (C, d+1)
        w -= eta * grad
        norms = np.linalg.norm(w, axis=1)
        shrink = np.where(norms > radius, radius / np.maximum(norms, 1e-300),
                          1.0)
        w *= shrink[:, None]

    return TrainedModel(
        kind=ClassifierKind.LINEAR_SVM,
        feature_subset=list(dataset.feature_names),
        class_set=list(dataset.class_set),
        seed=seed,
        hyperparams=params_dict(params),
        parameters={
            "mean": [float(v) for v in mean],
            "scale": [float(v) for v in scale],
            "weights": [[float(v) for v in row[:-1]] for row in w],
            "bias": [float(row[-1]) for row in w],
        },
    )


def predict_svm(model: TrainedModel, row: np.ndarray) -> int:
    mean = np.asarray(model.parameters["mean"])
    scale = np.asarray(model.parameters["scale"])
    weights = np.asarray(model.parameters["weights"])
    bias = np.asarray(model.parameters["bias"])
    z = (row - mean) / scale
    return int(np.argmax(weights @ z + bias))
