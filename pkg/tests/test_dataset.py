"""Labeled feature matrices and lossless CSV round-trips."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vidsource.dataset import (LabeledDataset, format_real, read_feature_csv,
                               write_feature_csv)
from vidsource.errors import InvalidInputError


def small_dataset():
    return LabeledDataset(
        feature_names=["f0", "f1"],
        rows=np.array([[1.5, -2.0], [0.25, 1e-300], [3.0, 0.1]]),
        labels=["cam_a", "cam_b", "cam_a"],
        clip_ids=["c1", "c2", "c3"],
    )


class TestLabeledDataset:
    def test_basic_accessors(self):
        ds = small_dataset()
        assert ds.n_rows == 3
        assert ds.class_set == ["cam_a", "cam_b"]
        np.testing.assert_array_equal(ds.label_indices(), [0, 1, 0])
        np.testing.assert_array_equal(ds.column("f1"), [-2.0, 1e-300, 0.1])
        assert ds.clips() == {"c1": "cam_a", "c2": "cam_b", "c3": "cam_a"}

    def test_project(self):
        ds = small_dataset().project(["f1"])
        assert ds.feature_names == ["f1"]
        np.testing.assert_array_equal(ds.rows[:, 0], [-2.0, 1e-300, 0.1])
        assert ds.labels == ["cam_a", "cam_b", "cam_a"]

    def test_project_missing_feature(self):
        with pytest.raises(InvalidInputError):
            small_dataset().project(["nope"])

    def test_rows_of_clip(self):
        ds = small_dataset()
        np.testing.assert_array_equal(ds.rows_of_clip("c2"), [[0.25, 1e-300]])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            LabeledDataset(["f0"], np.array([[np.nan]]), ["a"], ["c"])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(InvalidInputError):
            LabeledDataset(["f0", "f1"], np.array([[1.0]]), ["a"], ["c"])

    def test_rejects_bad_label_charset(self):
        with pytest.raises(InvalidInputError):
            LabeledDataset(["f0"], np.array([[1.0]]), ["has space"], ["c"])

    def test_rejects_clip_under_two_labels(self):
        ds = LabeledDataset(["f0"], np.array([[1.0], [2.0]]),
                            ["a", "b"], ["c1", "c1"])
        with pytest.raises(InvalidInputError):
            ds.clips()


class TestFormatReal:
    @pytest.mark.parametrize("value", [0.0, 1.5, -2.0, 1e-300, 1e300,
                                       0.1, 1 / 3, np.pi])
    def test_round_trips(self, value):
        assert float(format_real(value)) == value

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_round_trips_any_finite_double(self, value):
        text = format_real(value)
        assert float(text) == value


class TestCsvRoundTrip:
    def test_exact(self, tmp_path):
        ds = small_dataset()
        path = tmp_path / "features.csv"
        write_feature_csv(ds, path)
        back = read_feature_csv(path)
        assert back.feature_names == ds.feature_names
        np.testing.assert_array_equal(back.rows, ds.rows)
        assert back.labels == ds.labels
        assert back.clip_ids == ds.clip_ids

    def test_byte_stable(self, tmp_path):
        ds = small_dataset()
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_feature_csv(ds, first)
        write_feature_csv(ds, second)
        assert first.read_bytes() == second.read_bytes()

    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False),
                    min_size=2, max_size=2))
    def test_any_finite_doubles_round_trip(self, tmp_path_factory, values):
        path = tmp_path_factory.mktemp("csv") / "features.csv"
        ds = LabeledDataset(["f0", "f1"], np.array([values]), ["a"], ["c"])
        write_feature_csv(ds, path)
        np.testing.assert_array_equal(read_feature_csv(path).rows, ds.rows)

    def test_rejects_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("f0,f1\n1.0,2.0\n")
        with pytest.raises(InvalidInputError):
            read_feature_csv(path)

    def test_rejects_field_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("f0,label,clip_id\n1.0,a\n")
        with pytest.raises(InvalidInputError):
            read_feature_csv(path)

    def test_rejects_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(InvalidInputError):
            read_feature_csv(path)
