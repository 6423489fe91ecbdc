"""The five from-scratch classifiers."""

import json
import math

import numpy as np
import pytest

import oracles
from vidsource.classifiers import (DEFAULT_PARAMS, KIND_ALIASES,
                                   ClassifierKind, ForestParams,
                                   NaiveBayesParams, OneRParams, SvmParams,
                                   TreeParams, best_split, build_rule,
                                   check_trainable, grow_tree, load_model,
                                   predict_clip, predict_row, predict_rows,
                                   save_model, train, tree_predict)
from vidsource.classifiers.oner import apply_rule
from vidsource.dataset import LabeledDataset
from vidsource.errors import (InvalidInputError, InvalidParameterError,
                              SchemaVersionError)
from vidsource.seeds import derive_seed


def dataset_from_arrays(x, labels, feature_names=None) -> LabeledDataset:
    x = np.asarray(x, dtype=float)
    names = feature_names or [f"f{j}" for j in range(x.shape[1])]
    clips = [f"clip{i:03d}" for i in range(x.shape[0])]
    return LabeledDataset(names, x, list(labels), clips)


def blobs(seed: int, n_per_class: int = 30, separation: float = 6.0):
    """Two well-separated 2-D Gaussian blobs."""
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0, size=(n_per_class, 2))
    b = rng.normal(separation, 1.0, size=(n_per_class, 2))
    x = np.vstack([a, b])
    labels = ["cam_a"] * n_per_class + ["cam_b"] * n_per_class
    return dataset_from_arrays(x, labels)


class TestKinds:
    def test_canonical_values(self):
        assert {k.value for k in ClassifierKind} == {
            "random_forest", "c45_tree", "naive_bayes", "oner", "linear_svm"}

    def test_aliases(self):
        assert KIND_ALIASES["rf"] is ClassifierKind.RANDOM_FOREST
        assert KIND_ALIASES["j48"] is ClassifierKind.C45_TREE
        assert KIND_ALIASES["nb"] is ClassifierKind.NAIVE_BAYES
        assert KIND_ALIASES["oner"] is ClassifierKind.ONER
        assert KIND_ALIASES["svm"] is ClassifierKind.LINEAR_SVM

    def test_default_hyperparameters(self):
        assert DEFAULT_PARAMS[ClassifierKind.RANDOM_FOREST]() == ForestParams(
            n_trees=100, bootstrap=True, min_leaf=1)
        assert DEFAULT_PARAMS[ClassifierKind.C45_TREE]() == TreeParams(
            min_leaf=2)
        assert DEFAULT_PARAMS[ClassifierKind.NAIVE_BAYES]() == \
            NaiveBayesParams(var_floor=1e-9)
        assert DEFAULT_PARAMS[ClassifierKind.ONER]() == OneRParams(
            min_bucket=6)
        assert DEFAULT_PARAMS[ClassifierKind.LINEAR_SVM]() == SvmParams(
            regularization=1e-4, epochs=1000)


class TestTrainable:
    def test_needs_two_classes(self):
        ds = dataset_from_arrays([[0.0], [1.0]], ["a", "a"])
        with pytest.raises(InvalidInputError):
            check_trainable(ds)

    def test_needs_two_rows_per_class(self):
        ds = dataset_from_arrays([[0.0], [1.0], [2.0]], ["a", "a", "b"])
        with pytest.raises(InvalidInputError):
            check_trainable(ds)


class TestBestSplit:
    def test_matches_brute_force_on_random_data(self):
        for trial in range(6):
            rng = np.random.default_rng(trial)
            n = int(rng.integers(6, 21))
            d = int(rng.integers(1, 5))
            n_classes = int(rng.integers(2, 4))
            x = np.round(rng.normal(0, 1, size=(n, d)), 2)
            y = rng.integers(0, n_classes, size=n)
            got = best_split(x, y, range(d), n_classes, min_leaf=2)
            want = oracles.brute_force_best_split(x, y, n_classes, min_leaf=2)
            if want is None:
                assert got is None
            else:
                assert got is not None
                assert got[1:] == want[1:]           # same feature, threshold
                assert got[0] == pytest.approx(want[0], rel=1e-12)

    def test_no_split_on_constant_feature(self):
        x = np.ones((10, 1))
        y = np.array([0, 1] * 5)
        assert best_split(x, y, [0], 2, min_leaf=1) is None

    def test_no_split_without_gain(self):
        # the feature orders classes identically on both sides
        x = np.array([[0.0], [1.0], [0.0], [1.0]])
        y = np.array([0, 0, 1, 1])
        assert best_split(x, y, [0], 2, min_leaf=1) is None

    def test_min_leaf_constrains_candidates(self):
        x = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([0, 1, 1, 1])
        # min_leaf 2 forbids the pure 1-vs-3 cut at 0.5
        found = best_split(x, y, [0], 2, min_leaf=2)
        assert found is None or found[2] != 0.5

    def test_threshold_is_midpoint(self):
        x = np.array([[0.0], [0.0], [4.0], [4.0]])
        y = np.array([0, 0, 1, 1])
        ratio, feature, threshold = best_split(x, y, [0], 2, min_leaf=1)
        assert feature == 0
        assert threshold == 2.0
        assert ratio == pytest.approx(1.0)  # perfect balanced split

    def test_tie_prefers_lower_feature_index(self):
        column = np.array([0.0, 0.0, 4.0, 4.0])
        x = np.column_stack([column, column])
        y = np.array([0, 0, 1, 1])
        _, feature, _ = best_split(x, y, [0, 1], 2, min_leaf=1)
        assert feature == 0


class TestC45:
    def test_memorizes_training_data(self):
        ds = blobs(0)
        model = train(ClassifierKind.C45_TREE, ds, seed=1,
                      params=TreeParams(min_leaf=1))
        assert predict_rows(model, ds.rows) == ds.labels

    def test_tree_predict_walks_thresholds(self):
        node = {"feature": 0, "threshold": 1.0,
                "left": {"leaf": 0},
                "right": {"feature": 1, "threshold": 5.0,
                          "left": {"leaf": 1}, "right": {"leaf": 2}}}
        assert tree_predict(node, np.array([1.0, 0.0])) == 0   # <= goes left
        assert tree_predict(node, np.array([1.5, 5.0])) == 1
        assert tree_predict(node, np.array([1.5, 5.1])) == 2

    def test_grow_tree_pure_node_is_leaf(self):
        x = np.array([[0.0], [1.0]])
        y = np.array([1, 1])
        assert grow_tree(x, y, 2, min_leaf=1) == {"leaf": 1}

    def test_json_serializable(self):
        ds = blobs(1)
        model = train(ClassifierKind.C45_TREE, ds, seed=0)
        json.dumps(model.parameters)


class TestForest:
    def test_deterministic_per_seed(self):
        ds = blobs(2)
        a = train(ClassifierKind.RANDOM_FOREST, ds, seed=7)
        b = train(ClassifierKind.RANDOM_FOREST, ds, seed=7)
        c = train(ClassifierKind.RANDOM_FOREST, ds, seed=8)
        assert a.to_json() == b.to_json()
        assert a.to_json() != c.to_json()

    def test_single_unbagged_tree_equals_grow_tree(self):
        ds = blobs(3)
        model = train(ClassifierKind.RANDOM_FOREST, ds, seed=11,
                      params=ForestParams(n_trees=1, bootstrap=False))
        d = ds.rows.shape[1]
        rng = np.random.default_rng(derive_seed(11, "tree", 0))
        want = grow_tree(ds.rows, ds.label_indices(), 2, min_leaf=1,
                         max_features=int(math.ceil(math.sqrt(d))), rng=rng)
        assert model.parameters["trees"][0] == want

    def test_uses_sqrt_feature_subsets(self):
        ds = blobs(4)
        model = train(ClassifierKind.RANDOM_FOREST, ds, seed=0,
                      params=ForestParams(n_trees=5))
        assert model.parameters["max_features"] == 2  # ceil(sqrt(2))

    def test_separable_accuracy(self):
        ds = blobs(5)
        model = train(ClassifierKind.RANDOM_FOREST, ds, seed=0,
                      params=ForestParams(n_trees=25))
        hits = sum(p == t for p, t in zip(predict_rows(model, ds.rows),
                                          ds.labels))
        assert hits / ds.n_rows >= 0.99


class TestNaiveBayes:
    def test_parameters_match_closed_form(self):
        ds = blobs(6)
        model = train(ClassifierKind.NAIVE_BAYES, ds, seed=0)
        priors, means, variances = oracles.gaussian_nb_fit(
            ds.rows, ds.label_indices(), 2)
        np.testing.assert_allclose(model.parameters["priors"], priors,
                                   rtol=1e-12)
        np.testing.assert_allclose(model.parameters["means"], means,
                                   rtol=0, atol=1e-9)
        np.testing.assert_allclose(model.parameters["variances"], variances,
                                   rtol=1e-9)

    def test_predictions_match_posterior_argmax(self):
        ds = blobs(7, separation=3.0)
        model = train(ClassifierKind.NAIVE_BAYES, ds, seed=0)
        priors, means, variances = oracles.gaussian_nb_fit(
            ds.rows, ds.label_indices(), 2)
        test_rows = np.random.default_rng(70).normal(1.5, 2.0, size=(50, 2))
        for row in test_rows:
            scores = oracles.gaussian_nb_log_posteriors(priors, means,
                                                        variances, row)
            want = ds.class_set[int(np.argmax(scores))]
            assert predict_row(model, row) == want

    def test_row_order_invariance(self):
        ds = blobs(8)
        perm = np.random.default_rng(0).permutation(ds.n_rows)
        shuffled = LabeledDataset(ds.feature_names, ds.rows[perm],
                                  [ds.labels[i] for i in perm],
                                  [ds.clip_ids[i] for i in perm])
        a = train(ClassifierKind.NAIVE_BAYES, ds, seed=0)
        b = train(ClassifierKind.NAIVE_BAYES, shuffled, seed=0)
        assert a.parameters == b.parameters

    def test_variance_floor(self):
        x = np.array([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]])
        ds = dataset_from_arrays(x, ["a", "a", "b", "b"])
        model = train(ClassifierKind.NAIVE_BAYES, ds, seed=0)
        assert model.parameters["variances"][0][0] == 1e-9  # constant column


class TestOneR:
    def test_separable_rule_is_perfect(self):
        values = np.concatenate([np.linspace(0, 1, 12),
                                 np.linspace(5, 6, 12)])
        labels = np.array([0] * 12 + [1] * 12)
        rule = build_rule(values, labels, 2, min_bucket=6)
        assert rule.accuracy == 1.0
        np.testing.assert_array_equal(
            apply_rule(rule.thresholds, rule.classes, values), labels)

    def test_threshold_boundary_goes_left(self):
        values = np.array([0.0] * 6 + [2.0] * 6)
        labels = np.array([0] * 6 + [1] * 6)
        rule = build_rule(values, labels, 2, min_bucket=6)
        assert rule.thresholds == (1.0,)
        assert apply_rule(rule.thresholds, rule.classes, [1.0])[0] == 0
        assert apply_rule(rule.thresholds, rule.classes, [1.0 + 1e-9])[0] == 1

    def test_equal_values_never_straddle_buckets(self):
        values = np.array([0.0] * 8 + [1.0] * 6)
        labels = np.array([0] * 8 + [1] * 6)
        rule = build_rule(values, labels, 2, min_bucket=6)
        # the run of eight zeros extends the first bucket past min_bucket
        assert rule.thresholds == (0.5,)
        assert rule.accuracy == 1.0

    def test_short_remainder_absorbed(self):
        values = np.arange(8.0)
        labels = np.array([0] * 6 + [1] * 2)
        rule = build_rule(values, labels, 2, min_bucket=6)
        # 8 rows cannot hold two buckets of 6: single bucket, majority 0
        assert rule.thresholds == ()
        assert rule.accuracy == pytest.approx(6 / 8)

    def test_constant_feature_majority_rate(self):
        values = np.zeros(24)
        labels = np.array([0] * 9 + [1] * 15)
        rule = build_rule(values, labels, 2, min_bucket=6)
        assert rule.classes == (1,)
        assert rule.accuracy == pytest.approx(15 / 24)

    def test_row_order_invariance(self):
        ds = blobs(9)
        perm = np.random.default_rng(1).permutation(ds.n_rows)
        shuffled = LabeledDataset(ds.feature_names, ds.rows[perm],
                                  [ds.labels[i] for i in perm],
                                  [ds.clip_ids[i] for i in perm])
        a = train(ClassifierKind.ONER, ds, seed=0)
        b = train(ClassifierKind.ONER, shuffled, seed=0)
        assert a.parameters == b.parameters

    def test_picks_most_accurate_feature(self):
        rng = np.random.default_rng(10)
        y = np.array([0] * 15 + [1] * 15)
        x = np.column_stack([rng.normal(0, 1, 30), y + rng.normal(0, 0.05, 30)])
        ds = dataset_from_arrays(x, ["cam_a" if v == 0 else "cam_b" for v in y])
        model = train(ClassifierKind.ONER, ds, seed=0)
        assert model.parameters["feature_index"] == 1
        assert model.parameters["feature_name"] == "f1"


class TestSvm:
    def test_separable_accuracy(self):
        ds = blobs(11)
        model = train(ClassifierKind.LINEAR_SVM, ds, seed=0)
        hits = sum(p == t for p, t in zip(predict_rows(model, ds.rows),
                                          ds.labels))
        assert hits / ds.n_rows >= 0.99

    def test_deterministic(self):
        ds = blobs(12)
        a = train(ClassifierKind.LINEAR_SVM, ds, seed=0)
        b = train(ClassifierKind.LINEAR_SVM, ds, seed=0)
        assert a.to_json() == b.to_json()

    def test_standardization_stored(self):
        ds = blobs(13)
        model = train(ClassifierKind.LINEAR_SVM, ds, seed=0)
        np.testing.assert_allclose(model.parameters["mean"],
                                   ds.rows.mean(axis=0), rtol=1e-12)
        np.testing.assert_allclose(model.parameters["scale"],
                                   ds.rows.std(axis=0), rtol=1e-12)

    def test_constant_column_scale_is_one(self):
        x = np.array([[5.0, 0.0], [5.0, 1.0], [5.0, 4.0], [5.0, 5.0]])
        ds = dataset_from_arrays(x, ["a", "a", "b", "b"])
        model = train(ClassifierKind.LINEAR_SVM, ds, seed=0)
        assert model.parameters["scale"][0] == 1.0


class TestPredictInterface:
    def test_predict_row_validates_width(self):
        ds = blobs(14)
        model = train(ClassifierKind.ONER, ds, seed=0)
        with pytest.raises(InvalidInputError):
            predict_row(model, [1.0, 2.0, 3.0])

    def test_predict_clip_majority(self):
        ds = blobs(15)
        model = train(ClassifierKind.C45_TREE, ds, seed=0)
        rows = np.vstack([ds.rows[:3], ds.rows[-2:]])  # 3 cam_a, 2 cam_b
        assert predict_clip(model, rows) == "cam_a"

    def test_predict_clip_tie_takes_lowest_class_index(self):
        ds = blobs(16)
        model = train(ClassifierKind.C45_TREE, ds, seed=0)
        rows = np.vstack([ds.rows[:2], ds.rows[-2:]])  # 2 vs 2
        assert predict_clip(model, rows) == "cam_a"


class TestModelFiles:
    @pytest.mark.parametrize("kind", list(ClassifierKind))
    def test_round_trip(self, kind, tmp_path):
        ds = blobs(17)
        model = train(kind, ds, seed=5)
        path = tmp_path / "model.json"
        save_model(model, path)
        back = load_model(path)
        assert back.kind is model.kind
        assert back.to_json() == model.to_json()
        assert predict_rows(back, ds.rows) == predict_rows(model, ds.rows)

    def test_rejects_unknown_schema_version(self, tmp_path):
        ds = blobs(18)
        model = train(ClassifierKind.ONER, ds, seed=0)
        path = tmp_path / "model.json"
        save_model(model, path)
        payload = json.loads(path.read_text())
        payload["schema_version"] = 99
        path.write_text(json.dumps(payload))
        with pytest.raises(SchemaVersionError):
            load_model(path)

    def test_json_ends_with_newline(self):
        ds = blobs(19)
        model = train(ClassifierKind.NAIVE_BAYES, ds, seed=0)
        text = model.to_json()
        assert text.endswith("\n")
        assert json.loads(text)["schema_version"] == 1
