"""Unit tests for model files."""

import numpy as np
import pytest

from src.errors import ParseError
from src.nncore.io import MODEL_HEADER, dumps_model, load_model, loads_model, save_model


class TestModelFiles:
    """Test cases for model save/load."""

    def test_exact_round_trip(self, trained_model, tmp_path):
        """Test weights survive a save/load bit for bit."""
        path = save_model(trained_model, tmp_path / "models" / "m.txt")
        loaded = load_model(path)
        assert loaded.layers == trained_model.layers
        for a, b in zip(loaded.weights + loaded.biases, trained_model.weights + trained_model.biases):
            assert np.array_equal(a, b)

    def test_deterministic_text(self, trained_model):
        """Test serialization is stable."""
        assert dumps_model(trained_model) == dumps_model(loads_model(dumps_model(trained_model)))

    def test_bad_header(self, trained_model):
        """Test a foreign header is rejected on line 1."""
        text = dumps_model(trained_model).replace(MODEL_HEADER, "not-a-model", 1)
        with pytest.raises(ParseError) as exc:
            loads_model(text)
        assert exc.value.line == 1

    def test_truncated_file(self, trained_model):
        """Test truncation names the last good line."""
        lines = dumps_model(trained_model).splitlines()
        with pytest.raises(ParseError) as exc:
            loads_model("\n".join(lines[:5]))
        assert exc.value.line == 5

    def test_short_row(self, trained_model):
        """Test a weight row with a missing value is rejected on that line."""
        lines = dumps_model(trained_model).splitlines()
        lines[3] = " ".join(lines[3].split()[:-1])
        with pytest.raises(ParseError) as exc:
            loads_model("\n".join(lines))
        assert exc.value.line == 4

    def test_non_finite_value(self, trained_model):
        """Test NaN weights are rejected."""
        lines = dumps_model(trained_model).splitlines()
        values = lines[3].split()
        values[0] = "nan"
        lines[3] = " ".join(values)
        with pytest.raises(ParseError):
            loads_model("\n".join(lines))
