"""Binary decision trees with gain-ratio splits.

Candidate thresholds are midpoints between consecutive distinct values
of a feature; the split criterion is information gain ratio with
entropies in bits.  Ties are resolved deterministically: strictly
greater ratio wins, so the earliest candidate (lowest feature index,
then lowest threshold) is kept.  Rows with value <= threshold go left.

Nodes are nested dicts so trees serialize directly to JSON:
``{"leaf": class_index}`` or
``{"feature": j, "threshold": t, "left": ..., "right": ...}``.
"""

import numpy as np

from ..dataset import LabeledDataset
from ..seeds import make_rng
from .base import (ClassifierKind, TrainedModel, TreeParams, check_trainable,
                   params_dict)

#: Gains at or below this are treated as no improvement.
GAIN_EPS = 1e-12


def _entropy_rows(counts: np.ndarray, totals: np.ndarray) -> np.ndarray:
    """Entropy in bits for each row of class counts (rows sum to totals)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        p = counts / totals[:, None]
        terms = np.where(counts > 0, -p * np.log2(p), 0.0)
    return terms.sum(axis=1)


def best_split(x: np.ndarray, y: np.ndarray, features, n_classes: int,
               min_leaf: int):
    """Best (gain_ratio, feature, threshold) over the given features.

    ``x`` is the (n, d) matrix restricted to the node's rows, ``y`` the
    matching class indices.  Returns None when no candidate satisfies
    the min-leaf constraint or improves on the parent entropy.
    """
    n = y.size
    parent_counts = np.bincount(y, minlength=n_classes).astype(float)
    parent_entropy = _entropy_rows(parent_counts[None, :],
                                   np.array([float(n)]))[0]
    best = None  # (ratio, feature, threshold)
    for f in sorted(features):
        v = x[:, f]
        order = np.argsort(v, kind="stable")
        sv = v[order]
        sy = y[order]
        change = np.nonzero(sv[1:] != sv[:-1])[0]
        if change.size == 0:
            continue
        n_left = change + 1
        n_right = n - n_left
        valid = (n_left >= min_leaf) & (n_right >= min_leaf)
        if not valid.any():
            continue
        boundary = change[valid]
        n_left = n_left[valid].astype(float)
        n_right = n_right[valid].astype(float)
        onehot = np.zeros((n, n_classes))
        onehot[np.arange(n), sy] = 1.0
        cum = np.cumsum(onehot, axis=0)
        left_counts = cum[boundary]
        right_counts = parent_counts[None, :] - left_counts
        left_entropy = _entropy_rows(left_counts, n_left)
        right_entropy = _entropy_rows(right_counts, n_right)
        wl = n_left / n
        wr = n_right / n
        gain = parent_entropy - wl * left_entropy - wr * right_entropy
        split_info = -wl * np.log2(wl) - wr * np.log2(wr)
        with np.errstate(invalid="ignore"):
            ratio = np.where(gain > GAIN_EPS, gain / split_info, -np.inf)
        k = int(np.argmax(ratio))
        if not np.isfinite(ratio[k]):
            continue
        threshold = 0.5 * (sv[boundary[k]] + sv[boundary[k] + 1])
        if best is None or ratio[k] > best[0]:
            best = (float(ratio[k]), int(f), float(threshold))
    return best


def _majority(y: np.ndarray, n_classes: int) -> int:
    return int(np.argmax(np.bincount(y, minlength=n_classes)))


def grow_tree(x: np.ndarray, y: np.ndarray, n_classes: int, min_leaf: int,
              max_features=None, rng=None) -> dict:
    """Grow a tree to purity subject to the min-leaf constraint.

    When ``max_features`` is given, each node searches a fresh uniform
    sample (without replacement) of that many feature indices drawn
    from ``rng``; otherwise every feature is considered.
    """
    d = x.shape[1]

    def build(rows: np.ndarray) -> dict:
        yy = y[rows]
        if np.all(yy == yy[0]):
            return {"leaf": int(yy[0])}
        if max_features is None:
            features = range(d)
        else:
            features = rng.choice(d, size=min(max_features, d), replace=False)
        found = best_split(x[rows], yy, features, n_classes, min_leaf)
        if found is None:
            return {"leaf": _majority(yy, n_classes)}
        _, f, t = found
        go_left = x[rows, f] <= t
        return {
            "feature": f,
            "threshold": t,
            "left": build(rows[go_left]),
            "right": build(rows[~go_left]),
        }

    return build(np.arange(x.shape[0]))


def tree_predict(node: dict, row: np.ndarray) -> int:
    while "leaf" not in node:
        node = node["left"] if row[node["feature"]] <= node["threshold"] \
            else node["right"]
    return node["leaf"]


def train_c45(dataset: LabeledDataset, params: TreeParams,
              seed: int) -> TrainedModel:
    check_trainable(dataset)
    root = grow_tree(dataset.rows, dataset.label_indices(),
                     len(dataset.class_set), params.min_leaf)
    return TrainedModel(
        kind=ClassifierKind.C45_TREE,
        feature_subset=list(dataset.feature_names),
        class_set=list(dataset.class_set),
        seed=seed,
        hyperparams=params_dict(params),
        parameters={"tree": root},
    )


def predict_c45(model: TrainedModel, row: np.ndarray) -> int:
    return tree_predict(model.parameters["tree"], row)
