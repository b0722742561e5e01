"""Unit tests for dataset and soft-label files."""

import numpy as np
import pytest

from src.data import (
    dumps_dataset,
    dumps_soft_labels,
    load_dataset,
    loads_dataset,
    loads_soft_labels,
    save_dataset,
)
from src.errors import ParseError
from src.models.dataset import FeatureKind, SoftLabelSet


class TestDatasetFiles:
    """Test cases for dataset files."""

    def test_round_trip(self, tiny_data, tmp_path):
        """Test features, labels and header fields survive."""
        loaded = load_dataset(save_dataset(tiny_data, tmp_path / "d.txt"))
        assert np.array_equal(loaded.features, tiny_data.features)
        assert np.array_equal(loaded.labels, tiny_data.labels)
        assert loaded.n_classes == tiny_data.n_classes
        assert loaded.feature_kind == FeatureKind.BINARY

    def test_binary_rows_are_compact(self, tiny_data):
        """Test binary features are written as 0/1."""
        first_row = dumps_dataset(tiny_data).splitlines()[1]
        assert set(first_row.split(",")[1:]) <= {"0", "1"}

    def test_continuous_round_trip(self, continuous_data):
        """Test continuous features round-trip exactly."""
        loaded = loads_dataset(dumps_dataset(continuous_data))
        assert np.array_equal(loaded.features, continuous_data.features)

    def test_wrong_magic(self, tiny_data):
        """Test a foreign header is rejected."""
        text = "other-format " + dumps_dataset(tiny_data).split(" ", 2)[2]
        with pytest.raises(ParseError) as exc:
            loads_dataset(text)
        assert exc.value.line == 1

    def test_row_length_mismatch(self, tiny_data):
        """Test a short row names its line."""
        lines = dumps_dataset(tiny_data).splitlines()
        lines[3] = lines[3].rsplit(",", 1)[0]
        with pytest.raises(ParseError) as exc:
            loads_dataset("\n".join(lines))
        assert exc.value.line == 4

    def test_truncated(self, tiny_data):
        """Test fewer rows than the header declares raises."""
        lines = dumps_dataset(tiny_data).splitlines()
        with pytest.raises(ParseError):
            loads_dataset("\n".join(lines[:10]))

    def test_label_out_of_range(self, tiny_data):
        """Test a label >= c is rejected."""
        lines = dumps_dataset(tiny_data).splitlines()
        lines[1] = "9" + lines[1][1:]
        with pytest.raises(ParseError) as exc:
            loads_dataset("\n".join(lines))
        assert exc.value.line == 2


class TestSoftLabelFiles:
    """Test cases for soft-label files."""

    @pytest.fixture
    def soft(self):
        rng = np.random.default_rng(0)
        return SoftLabelSet(
            inputs=rng.integers(0, 2, size=(5, 4)).astype(float),
            soft_labels=rng.dirichlet(np.ones(3), size=5),
            teacher_temperature=2.5,
        )

    def test_round_trip(self, soft):
        """Test inputs, probabilities and temperature survive exactly."""
        loaded = loads_soft_labels(dumps_soft_labels(soft))
        assert np.array_equal(loaded.inputs, soft.inputs)
        assert np.array_equal(loaded.soft_labels, soft.soft_labels)
        assert loaded.teacher_temperature == 2.5

    def test_missing_separator(self, soft):
        """Test a row without '|' is rejected on its line."""
        lines = dumps_soft_labels(soft).splitlines()
        lines[2] = lines[2].replace("|", ",")
        with pytest.raises(ParseError) as exc:
            loads_soft_labels("\n".join(lines))
        assert exc.value.line == 3

    def test_not_a_distribution(self, soft):
        """Test probability rows that do not sum to one are rejected."""
        text = dumps_soft_labels(soft)
        header, first, rest = text.split("\n", 2)
        features, _ = first.split("|")
        with pytest.raises(ParseError):
            loads_soft_labels("\n".join([header, features + "|0.5,0.5,0.5", rest]))
