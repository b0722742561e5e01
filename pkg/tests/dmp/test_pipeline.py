"""Unit tests for the defense pipeline and the baseline regularizers."""

import numpy as np
import pytest

from src.dmp import regularized_config, run_pipeline, train_unprotected, train_with_regularizer
from src.errors import InvalidInputError, StageError
from src.models.dmp import Regularizer
from src.models.network import LossKind, TrainConfig
from src.models.report import ExperimentReport


class TestTrainUnprotected:
    """Test cases for train_unprotected."""

    def test_report(self, tiny_parts, tiny_layers, tiny_recipe):
        """Test accuracies and E_gen are recorded."""
        report = ExperimentReport()
        train_unprotected(tiny_parts.d_tr, tiny_recipe, tiny_layers, tiny_parts.d_test, report)
        a_train = report.get("no_defense", "a_train")
        a_test = report.get("no_defense", "a_test")
        assert report.get("no_defense", "e_gen") == pytest.approx(a_train - a_test)

    def test_rejects_kl_recipe(self, tiny_parts, tiny_layers):
        """Test the unprotected model trains with cross-entropy only."""
        with pytest.raises(InvalidInputError):
            train_unprotected(tiny_parts.d_tr, TrainConfig(loss=LossKind.KL_DIVERGENCE), tiny_layers)


class TestRegularizers:
    """Test cases for the baseline regularizers."""

    @pytest.mark.parametrize(
        "kind,field",
        [
            (Regularizer.WEIGHT_DECAY, "weight_decay"),
            (Regularizer.DROPOUT, "dropout_rate"),
            (Regularizer.LABEL_SMOOTHING, "label_smoothing"),
            (Regularizer.CONFIDENCE_PENALTY, "confidence_penalty"),
        ],
    )
    def test_sets_one_knob(self, tiny_recipe, kind, field):
        """Test exactly one field changes."""
        config = regularized_config(tiny_recipe, kind, 0.25)
        assert getattr(config, field) == 0.25
        assert config.epochs == tiny_recipe.epochs
        assert config.seed == tiny_recipe.seed

    def test_none_is_copy(self, tiny_recipe):
        """Test NONE leaves the recipe unchanged."""
        assert regularized_config(tiny_recipe, Regularizer.NONE, 0.0) == tiny_recipe

    def test_invalid_strength(self, tiny_recipe):
        """Test a dropout rate of 1 is rejected."""
        with pytest.raises(InvalidInputError):
            regularized_config(tiny_recipe, Regularizer.DROPOUT, 1.0)

    def test_experiment_id(self, tiny_parts, tiny_layers):
        """Test baseline rows are named after the regularizer and strength."""
        report = ExperimentReport()
        recipe = TrainConfig(epochs=2, batch_size=16, seed=0)
        train_with_regularizer(tiny_parts.d_tr, Regularizer.WEIGHT_DECAY, 0.001, recipe, tiny_layers,
                               tiny_parts.d_test, report)
        assert report.experiments() == ["wd_0.001"]


class TestRunPipeline:
    """Test cases for run_pipeline."""

    def test_end_to_end(self, tiny_parts, tiny_layers, tiny_dmp_config):
        """Test both models, the soft labels and the report are produced."""
        result = run_pipeline(
            tiny_parts.d_tr, tiny_parts.x_ref_pool.features, tiny_parts.d_test, tiny_dmp_config, tiny_layers
        )
        assert result.soft_labels.n_samples == tiny_dmp_config.ref_size
        assert result.selection.indices.size == tiny_dmp_config.ref_size
        assert set(result.report.experiments()) == {"no_defense", "dmp"}
        for experiment in ("no_defense", "dmp"):
            assert 0.0 <= result.report.get(experiment, "a_test") <= 1.0
        assert result.report.get("dmp", "mean_ref_entropy") == pytest.approx(result.selection.mean_entropy)
        assert result.protected.layers == result.unprotected.layers

    def test_deterministic(self, tiny_parts, tiny_layers, tiny_dmp_config):
        """Test identical inputs give identical protected weights."""
        args = (tiny_parts.d_tr, tiny_parts.x_ref_pool.features, tiny_parts.d_test, tiny_dmp_config, tiny_layers)
        first = run_pipeline(*args).protected
        second = run_pipeline(*args).protected
        assert all(np.array_equal(a, b) for a, b in zip(first.weights, second.weights))

    def test_stage_error_names_stage(self, tiny_parts, tiny_layers, tiny_dmp_config):
        """Test a failing selection is reported as a reference-selection stage error."""
        cfg = tiny_dmp_config.model_copy(update={"ref_size": 10_000})
        with pytest.raises(StageError) as exc:
            run_pipeline(tiny_parts.d_tr, tiny_parts.x_ref_pool.features, tiny_parts.d_test, cfg, tiny_layers)
        assert exc.value.stage == "reference-selection"
        assert isinstance(exc.value.cause, InvalidInputError)

    def test_dimension_mismatch(self, tiny_parts, tiny_layers, tiny_dmp_config):
        """Test a pool of the wrong width is rejected up front."""
        with pytest.raises(InvalidInputError):
            run_pipeline(tiny_parts.d_tr, np.zeros((10, 3)), tiny_parts.d_test, tiny_dmp_config, tiny_layers)
