"""Random forest: bagged gain-ratio trees over random feature subsets."""

import math

import numpy as np

from ..dataset import LabeledDataset
from ..seeds import derive_seed
from .base import (ClassifierKind, ForestParams, TrainedModel,
                   check_trainable, params_dict)
from .tree import grow_tree, tree_predict


def train_forest(dataset: LabeledDataset, params: ForestParams,
                 seed: int) -> TrainedModel:
    check_trainable(dataset)
    x = dataset.rows
    y = dataset.label_indices()
    n, d = x.shape
    max_features = int(math.ceil(math.sqrt(d)))
    trees = []
    for t in range(params.n_trees):
        rng = np.random.default_rng(derive_seed(seed, "tree", t))
        if params.bootstrap:
            sample = rng.integers(0, n, size=n)
        else:
            sample = np.arange(n)
        trees.append(grow_tree(x[sample], y[sample], len(dataset.class_set),
                               params.min_leaf, max_features=max_features,
                               rng=rng))
    return TrainedModel(
        kind=ClassifierKind.RANDOM_FOREST,
        feature_subset=list(dataset.feature_names),
        class_set=list(dataset.class_set),
        seed=seed,
        hyperparams=params_dict(params),
        parameters={"trees": trees, "max_features": max_features},
    )


def predict_forest(model: TrainedModel, row: np.ndarray) -> int:
    votes = np.zeros(len(model.class_set), dtype=int)
    for tree in model.parameters["trees"]:
        votes[tree_predict(tree, row)] += 1
    return int(np.argmax(votes))
