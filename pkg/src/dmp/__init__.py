"""Distillation for membership privacy."""

from .selection import prediction_entropies, prediction_entropy, select_reference
from .distillation import distill, make_soft_labels
from .pipeline import (
    generalization_report,
    regularized_config,
    run_pipeline,
    train_unprotected,
    train_with_regularizer,
)

__all__ = [
    "prediction_entropies",
    "prediction_entropy",
    "select_reference",
    "distill",
    "make_soft_labels",
    "generalization_report",
    "regularized_config",
    "run_pipeline",
    "train_unprotected",
    "train_with_regularizer",
]
