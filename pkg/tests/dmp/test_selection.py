"""Unit tests for entropy-based reference selection."""

import numpy as np
import pytest

from src.dmp import prediction_entropies, prediction_entropy, select_reference
from src.errors import InvalidInputError
from src.models.dmp import SelectionMode


class TestPredictionEntropy:
    """Test cases for prediction_entropy."""

    def test_bounds(self, trained_model, tiny_data):
        """Test entropies lie in [0, log c]."""
        values = prediction_entropies(trained_model, tiny_data.features)
        assert np.all(values >= 0)
        assert np.all(values <= np.log(trained_model.n_classes) + 1e-12)

    def test_single_matches_batch(self, trained_model, tiny_data):
        """Test the scalar form agrees with the vectorized form."""
        batch = prediction_entropies(trained_model, tiny_data.features[:3], 2.0)
        for i in range(3):
            assert prediction_entropy(trained_model, tiny_data.features[i], 2.0) == pytest.approx(batch[i])

    def test_temperature_raises_entropy(self, trained_model, tiny_data):
        """Test a hotter softmax gives higher entropy."""
        cold = prediction_entropies(trained_model, tiny_data.features, 1.0)
        hot = prediction_entropies(trained_model, tiny_data.features, 5.0)
        assert hot.mean() > cold.mean()


class TestSelectReference:
    """Test cases for select_reference."""

    def test_lowest_entropy(self, trained_model, tiny_parts, tiny_dmp_config):
        """Test the ref_size lowest-entropy rows are picked in ascending order."""
        pool = tiny_parts.x_ref_pool.features
        selection = select_reference(pool, trained_model, tiny_dmp_config)
        assert selection.indices.size == tiny_dmp_config.ref_size
        chosen = selection.selected_entropies
        assert np.all(np.diff(chosen) >= 0)
        others = np.delete(selection.pool_entropies, selection.indices)
        assert chosen.max() <= others.min()
        assert np.array_equal(selection.features, pool[selection.indices])

    def test_entropy_buckets_partition_pool(self, trained_model, tiny_parts, tiny_dmp_config):
        """Test buckets cover the pool once, with rising mean entropy."""
        pool = tiny_parts.x_ref_pool.features
        selections = [
            select_reference(
                pool,
                trained_model,
                tiny_dmp_config.model_copy(
                    update={"selection": SelectionMode.ENTROPY_BUCKET, "bucket_index": b, "n_buckets": 3}
                ),
            )
            for b in range(3)
        ]
        indices = np.concatenate([s.indices for s in selections])
        assert sorted(indices.tolist()) == list(range(pool.shape[0]))
        means = [s.mean_entropy for s in selections]
        assert means == sorted(means)

    def test_all(self, trained_model, tiny_parts, tiny_dmp_config):
        """Test ALL keeps the whole pool."""
        pool = tiny_parts.x_ref_pool.features
        cfg = tiny_dmp_config.model_copy(update={"selection": SelectionMode.ALL})
        assert select_reference(pool, trained_model, cfg).indices.size == pool.shape[0]

    def test_ref_size_exceeds_pool(self, trained_model, tiny_parts, tiny_dmp_config):
        """Test asking for more rows than the pool holds raises."""
        cfg = tiny_dmp_config.model_copy(update={"ref_size": 1000})
        with pytest.raises(InvalidInputError):
            select_reference(tiny_parts.x_ref_pool.features, trained_model, cfg)

    def test_bucket_out_of_range(self, trained_model, tiny_parts, tiny_dmp_config):
        """Test a bucket index >= n_buckets raises."""
        cfg = tiny_dmp_config.model_copy(
            update={"selection": SelectionMode.ENTROPY_BUCKET, "bucket_index": 5, "n_buckets": 5}
        )
        with pytest.raises(InvalidInputError):
            select_reference(tiny_parts.x_ref_pool.features, trained_model, cfg)

    def test_empty_pool(self, trained_model, tiny_dmp_config):
        """Test an empty pool raises."""
        with pytest.raises(InvalidInputError):
            select_reference(np.zeros((0, trained_model.input_dim)), trained_model, tiny_dmp_config)
