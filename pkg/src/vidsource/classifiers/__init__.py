"""Five from-scratch classifiers behind a single train/predict interface."""

import numpy as np

from ..dataset import LabeledDataset
from ..errors import InvalidInputError
from .base import (DEFAULT_PARAMS, KIND_ALIASES, MODEL_SCHEMA_VERSION,
                   ClassifierKind, ForestParams, NaiveBayesParams, OneRParams,
                   SvmParams, TrainedModel, TreeParams, check_trainable,
                   load_model, save_model)
from .forest import predict_forest, train_forest
from .naive_bayes import predict_naive_bayes, train_naive_bayes
from .oner import build_rule, predict_oner, train_oner
from .svm import predict_svm, train_svm
from .tree import best_split, grow_tree, predict_c45, train_c45, tree_predict

_TRAINERS = {
    ClassifierKind.RANDOM_FOREST: train_forest,
    ClassifierKind.C45_TREE: train_c45,
    ClassifierKind.NAIVE_BAYES: train_naive_bayes,
    ClassifierKind.ONER: train_oner,
    ClassifierKind.LINEAR_SVM: train_svm,
}

_PREDICTORS = {
    ClassifierKind.RANDOM_FOREST: predict_forest,
    ClassifierKind.C45_TREE: predict_c45,
    ClassifierKind.NAIVE_BAYES: predict_naive_bayes,
    ClassifierKind.ONER: predict_oner,
    ClassifierKind.LINEAR_SVM: predict_svm,
}


def train(kind: ClassifierKind, dataset: LabeledDataset, seed: int,
          params=None) -> TrainedModel:
    if params is None:
        params = DEFAULT_PARAMS[kind]()
    return _TRAINERS[kind](dataset, params, seed)


def predict_row(model: TrainedModel, row) -> str:
    row = np.asarray(row, dtype=float)
    if row.shape != (len(model.feature_subset),):
        raise InvalidInputError(
            f"row has {row.shape} values, model expects "
            f"{len(model.feature_subset)}")
    return model.class_set[_PREDICTORS[model.kind](model, row)]


def predict_rows(model: TrainedModel, rows) -> list:
    return [predict_row(model, row) for row in np.asarray(rows, dtype=float)]


def predict_clip(model: TrainedModel, rows) -> str:
    """Clip-level label: majority over frame votes, ties to the lowest
    canonical class index."""
    votes = np.zeros(len(model.class_set), dtype=int)
    for label in predict_rows(model, rows):
        votes[model.class_set.index(label)] += 1
    return model.class_set[int(np.argmax(votes))]


__all__ = [
    "ClassifierKind", "TrainedModel", "ForestParams", "TreeParams",
    "NaiveBayesParams", "OneRParams", "SvmParams", "DEFAULT_PARAMS",
    "KIND_ALIASES", "MODEL_SCHEMA_VERSION", "train", "predict_row",
    "predict_rows", "predict_clip", "save_model", "load_model",
    "check_trainable", "best_split", "grow_tree", "tree_predict",
    "build_rule",
]
