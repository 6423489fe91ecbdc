"""Feature ranking and top-k intersection."""

import numpy as np
import pytest

from vidsource.dataset import LabeledDataset
from vidsource.errors import InvalidParameterError, SelectionError
from vidsource.selection import (DEFAULT_TOP_K, correlation_rank,
                                 load_selection, oner_rank, save_selection,
                                 select_intersection, selection_to_json)


def make_dataset(columns: dict, labels) -> LabeledDataset:
    names = list(columns)
    rows = np.column_stack([np.asarray(columns[n], dtype=float)
                            for n in names])
    clips = [f"clip{i:03d}" for i in range(len(labels))]
    return LabeledDataset(names, rows, list(labels), clips)


def binary_labels(n: int) -> list:
    half = n // 2
    return ["cam_a"] * half + ["cam_b"] * (n - half)


class TestCorrelationRank:
    def test_informative_feature_outranks_noise(self):
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        rng = np.random.default_rng(0)
        ds = make_dataset({
            "noise": rng.normal(0, 1, 24),
            "signal": y + rng.normal(0, 0.01, 24),
        }, labels)
        ranking = correlation_rank(ds)
        assert ranking.evaluator == "correlation"
        assert ranking.top(1) == ("signal",)

    def test_constant_feature_scores_zero(self):
        ds = make_dataset({"const": np.ones(24)}, binary_labels(24))
        assert correlation_rank(ds).scores[0] == 0.0

    def test_invariant_under_positive_affine_transform(self):
        labels = binary_labels(24)
        values = np.random.default_rng(1).normal(0, 1, 24)
        a = make_dataset({"f": values}, labels)
        b = make_dataset({"f": 3.0 * values + 7.0}, labels)
        assert correlation_rank(a).scores[0] == pytest.approx(
            correlation_rank(b).scores[0], rel=1e-12)


class TestOneRRank:
    def test_score_is_rule_training_accuracy(self):
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        ds = make_dataset({"perfect": y}, labels)
        assert oner_rank(ds).scores[0] == 1.0

    def test_rank_order_invariant_under_increasing_transform(self):
        labels = binary_labels(24)
        rng = np.random.default_rng(2)
        values = rng.normal(0, 1, 24)
        a = make_dataset({"f": values}, labels)
        b = make_dataset({"f": 2.0 * values + 3.0}, labels)
        # bucket boundaries are order statistics, so accuracy is identical
        assert oner_rank(a).scores[0] == oner_rank(b).scores[0]

    def test_constant_feature_scores_majority_rate(self):
        labels = ["cam_a"] * 16 + ["cam_b"] * 8
        ds = make_dataset({"const": np.zeros(24)}, labels)
        assert oner_rank(ds).scores[0] == pytest.approx(16 / 24)


class TestSelectIntersection:
    def test_k_bounds(self):
        ds = make_dataset({"f0": np.arange(24.0)}, binary_labels(24))
        with pytest.raises(InvalidParameterError):
            select_intersection(ds, k=0)
        with pytest.raises(InvalidParameterError):
            select_intersection(ds, k=2)

    def test_default_k_is_30(self):
        assert DEFAULT_TOP_K == 30

    def test_selected_names_in_canonical_order(self):
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        rng = np.random.default_rng(3)
        ds = make_dataset({
            "z_first": y + rng.normal(0, 0.05, 24),
            "a_second": y + rng.normal(0, 0.05, 24),
        }, labels)
        selected = select_intersection(ds, k=2)
        assert selected.names == ("z_first", "a_second")  # dataset order
        assert selected.k == 2

    def test_empty_intersection_raises(self):
        # feature order breaks the oner tie toward f_noisy, while f_exact
        # has the strictly larger correlation, so the k=1 tops are disjoint
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        wiggle = np.tile([0.01, -0.01], 12)
        ds = make_dataset({"f_noisy": y + wiggle, "f_exact": y}, labels)
        with pytest.raises(SelectionError) as err:
            select_intersection(ds, k=1)
        assert "f_noisy" in str(err.value)
        assert "f_exact" in str(err.value)

    def test_intersection_contents(self):
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        rng = np.random.default_rng(4)
        ds = make_dataset({
            "good": y + rng.normal(0, 0.01, 24),
            "bad": rng.normal(0, 1, 24),
        }, labels)
        selected = select_intersection(ds, k=1)
        assert selected.names == ("good",)


class TestSerialization:
    def _selected(self):
        labels = binary_labels(24)
        y = np.array([0.0] * 12 + [1.0] * 12)
        rng = np.random.default_rng(5)
        ds = make_dataset({
            "f0": y + rng.normal(0, 0.01, 24),
            "f1": rng.normal(0, 1, 24),
            "f2": y + rng.normal(0, 0.10, 24),
        }, labels)
        return select_intersection(ds, k=2)

    def test_json_round_trip(self, tmp_path):
        selected = self._selected()
        path = tmp_path / "selection.json"
        save_selection(selected, path)
        back = load_selection(path)
        assert back.names == selected.names
        assert back.k == selected.k
        evaluators = [r.evaluator for r in back.rankings]
        assert evaluators == sorted(evaluators)

    def test_json_is_stable_text(self):
        selected = self._selected()
        assert selection_to_json(selected) == selection_to_json(selected)
        assert selection_to_json(selected).endswith("\n")
