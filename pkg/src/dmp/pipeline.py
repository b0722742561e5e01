"""The three-phase defense and the baseline regularizers it is compared with."""

import logging
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from ..errors import DmpError, InvalidInputError, StageError
from ..models.dataset import Dataset
from ..models.dmp import DmpConfig, PipelineResult, Regularizer
from ..models.network import LayerSpec, LossKind, Mlp, TrainConfig
from ..models.report import ExperimentReport
from ..nncore.training import evaluate, train_from_scratch
from .distillation import distill, make_soft_labels
from .selection import select_reference


logger = logging.getLogger(__name__)

_REGULARIZER_FIELDS = {
    Regularizer.WEIGHT_DECAY: "weight_decay",
    Regularizer.DROPOUT: "dropout_rate",
    Regularizer.LABEL_SMOOTHING: "label_smoothing",
    Regularizer.CONFIDENCE_PENALTY: "confidence_penalty",
}


def generalization_report(
    model: Mlp,
    d_tr: Dataset,
    d_test: Optional[Dataset],
    experiment_id: str,
) -> ExperimentReport:
    """a_train, and when a test set is given a_test and e_gen, evaluated at T=1."""
    report = ExperimentReport()
    a_train = evaluate(model, d_tr).accuracy
    report.add(experiment_id, "a_train", a_train)
    if d_test is not None:
        a_test = evaluate(model, d_test).accuracy
        report.add(experiment_id, "a_test", a_test)
        report.add(experiment_id, "e_gen", a_train - a_test)
        logger.info(f"{experiment_id}: A_train={a_train:.4f} A_test={a_test:.4f} E_gen={a_train - a_test:.4f}")
    return report


def train_unprotected(
    d_tr: Dataset,
    cfg: TrainConfig,
    layers: Sequence[LayerSpec],
    d_test: Optional[Dataset] = None,
    report: Optional[ExperimentReport] = None,
    experiment_id: str = "no_defense",
) -> Mlp:
    """Train the unprotected model directly on the private data.

    Args:
        d_tr: Private training set
        cfg: Cross-entropy recipe, regularizers included
        layers: Architecture
        d_test: Optional test set for A_test and E_gen
        report: Optional report the accuracies are appended to
        experiment_id: Row identifier in the report

    Returns:
        Trained unprotected model

    Raises:
        InvalidInputError: On empty data or a non cross-entropy recipe
        TrainingDivergedError: If training diverges
    """
    if d_tr.n_samples == 0:
        raise InvalidInputError("training set is empty")
    if cfg.loss != LossKind.CROSS_ENTROPY:
        raise InvalidInputError("the unprotected model trains with cross_entropy")
    model = train_from_scratch(layers, d_tr, cfg).model
    metrics = generalization_report(model, d_tr, d_test, experiment_id)
    if report is not None:
        report.extend(metrics)
    return model


def regularized_config(base: TrainConfig, kind: Regularizer, strength: float) -> TrainConfig:
    """Copy a recipe with one regularizer knob set.

    Raises:
        InvalidInputError: If the strength is outside the knob's range
    """
    if kind == Regularizer.NONE:
        return base.model_copy()
    try:
        return TrainConfig(**{**base.model_dump(), _REGULARIZER_FIELDS[kind]: strength})
    except ValidationError as e:
        raise InvalidInputError(f"invalid {kind.value} strength {strength}: {e}")


def train_with_regularizer(
    d_tr: Dataset,
    kind: Regularizer,
    strength: float,
    base: TrainConfig,
    layers: Sequence[LayerSpec],
    d_test: Optional[Dataset] = None,
    report: Optional[ExperimentReport] = None,
) -> Mlp:
    """Train an unprotected model with one baseline regularizer."""
    experiment_id = "no_defense" if kind == Regularizer.NONE else f"{kind.value}_{strength:g}"
    logger.info(f"Training baseline {experiment_id}")
    return train_unprotected(d_tr, regularized_config(base, kind, strength), layers, d_test, report, experiment_id)


def _check_dimensions(d_tr: Dataset, pool: np.ndarray, d_test: Dataset, layers: Sequence[LayerSpec]) -> None:
    if pool.ndim != 2 or pool.shape[1] != d_tr.n_features:
        raise InvalidInputError(f"reference pool width {pool.shape[-1]} != training width {d_tr.n_features}")
    if d_test.n_features != d_tr.n_features:
        raise InvalidInputError(f"test width {d_test.n_features} != training width {d_tr.n_features}")
    if d_test.n_classes != d_tr.n_classes:
        raise InvalidInputError(f"test classes {d_test.n_classes} != training classes {d_tr.n_classes}")
    if layers[0].input_dim != d_tr.n_features or layers[-1].output_dim != d_tr.n_classes:
        raise InvalidInputError("architecture does not match the data dimensions")


def run_pipeline(
    d_tr: Dataset,
    pool: np.ndarray,
    d_test: Dataset,
    cfg: DmpConfig,
    layers: Sequence[LayerSpec],
    student_layers: Optional[Sequence[LayerSpec]] = None,
) -> PipelineResult:
    """Pre-distillation training, reference selection, soft labels, distillation.

    Args:
        d_tr: Private training set
        pool: Unlabeled reference pool
        d_test: Test set
        cfg: Defense configuration
        layers: Teacher architecture
        student_layers: Student architecture (defaults to the teacher's)

    Returns:
        PipelineResult with both models, the soft labels, the selection and
        a report holding a_train/a_test/e_gen for both models

    Raises:
        InvalidInputError: If the parts are dimension-inconsistent
        StageError: If a stage fails; wraps the cause and names the stage
    """
    layers = list(layers)
    student_layers = list(student_layers) if student_layers is not None else layers
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    _check_dimensions(d_tr, pool, d_test, layers)
    report = ExperimentReport()

    stage = "pre-distillation"
    try:
        teacher = train_unprotected(d_tr, cfg.teacher_train, layers, d_test, report, "no_defense")
        stage = "reference-selection"
        selection = select_reference(pool, teacher, cfg)
        stage = "soft-labels"
        soft = make_soft_labels(teacher, selection.features, cfg.teacher_temperature)
        stage = "post-distillation"
        student = distill(student_layers, soft, cfg)
        stage = "evaluation"
        report.extend(generalization_report(student, d_tr, d_test, "dmp"))
        report.add("dmp", "mean_ref_entropy", selection.mean_entropy)
    except (DmpError, ValueError) as e:
        logger.error(f"Pipeline stage '{stage}' failed: {e}")
        raise StageError(stage, e) from e

    return PipelineResult(unprotected=teacher, protected=student, soft_labels=soft, selection=selection, report=report)
