"""Shared classifier plumbing: kinds, hyperparameters, model files.

A trained model is a plain data object: its ``parameters`` are
JSON-native structures, prediction is a pure function of (model, row),
and the on-disk form is versioned, sorted-key JSON that round-trips
byte-identically through save/load.
"""

import enum
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from ..dataset import LabeledDataset
from ..errors import InvalidInputError, SchemaVersionError

MODEL_SCHEMA_VERSION = 1


class ClassifierKind(enum.Enum):
    RANDOM_FOREST = "random_forest"
    C45_TREE = "c45_tree"
    NAIVE_BAYES = "naive_bayes"
    ONER = "oner"
    LINEAR_SVM = "linear_svm"


#: CLI short names.
KIND_ALIASES = {
    "rf": ClassifierKind.RANDOM_FOREST,
    "j48": ClassifierKind.C45_TREE,
    "nb": ClassifierKind.NAIVE_BAYES,
    "oner": ClassifierKind.ONER,
    "svm": ClassifierKind.LINEAR_SVM,
}


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    bootstrap: bool = True
    min_leaf: int = 1


@dataclass(frozen=True)
class TreeParams:
    min_leaf: int = 2


@dataclass(frozen=True)
class NaiveBayesParams:
    var_floor: float = 1e-9


@dataclass(frozen=True)
class OneRParams:
    min_bucket: int = 6


@dataclass(frozen=True)
class SvmParams:
    regularization: float = 1e-4
    epochs: int = 1000


DEFAULT_PARAMS = {
    ClassifierKind.RANDOM_FOREST: ForestParams,
    ClassifierKind.C45_TREE: TreeParams,
    ClassifierKind.NAIVE_BAYES: NaiveBayesParams,
    ClassifierKind.ONER: OneRParams,
    ClassifierKind.LINEAR_SVM: SvmParams,
}


@dataclass
class TrainedModel:
    kind: ClassifierKind
    feature_subset: list
    class_set: list
    seed: int
    hyperparams: dict
    parameters: dict
    schema_version: int = field(default=MODEL_SCHEMA_VERSION)

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "kind": self.kind.value,
            "seed": self.seed,
            "hyperparams": self.hyperparams,
            "feature_subset": list(self.feature_subset),
            "class_set": list(self.class_set),
            "parameters": self.parameters,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def native(value):
    """Recursively convert numpy scalars/arrays to JSON-native types."""
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [native(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [native(v) for v in value]
    if isinstance(value, dict):
        return {k: native(v) for k, v in value.items()}
    return value


def params_dict(params) -> dict:
    return native(asdict(params))


def save_model(model: TrainedModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(model.to_json())


def load_model(path) -> TrainedModel:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"model schema version {version!r} unsupported "
            f"(expected {MODEL_SCHEMA_VERSION})")
    return TrainedModel(
        kind=ClassifierKind(payload["kind"]),
        feature_subset=list(payload["feature_subset"]),
        class_set=list(payload["class_set"]),
        seed=payload["seed"],
        hyperparams=payload["hyperparams"],
        parameters=payload["parameters"],
        schema_version=version,
    )


def check_trainable(dataset: LabeledDataset) -> None:
    """Preconditions common to every kind: >= 2 classes, >= 2 rows each."""
    if len(dataset.class_set) < 2:
        raise InvalidInputError(
            f"training needs >= 2 classes, got {dataset.class_set}")
    idx = dataset.label_indices()
    counts = np.bincount(idx, minlength=len(dataset.class_set))
    for label, count in zip(dataset.class_set, counts):
        if count < 2:
            raise InvalidInputError(f"class {label!r} has only {count} row(s)")
