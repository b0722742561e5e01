"""Soft-label transfer and student training."""

import logging
from typing import Sequence

import numpy as np

from ..errors import InvalidInputError
from ..models.dataset import SoftLabelSet
from ..models.dmp import DmpConfig
from ..models.network import LayerSpec, Mlp, check_architecture
from ..nncore.layers import predict_proba
from ..nncore.training import train_from_scratch


logger = logging.getLogger(__name__)


def make_soft_labels(teacher: Mlp, x_ref: np.ndarray, temperature: float) -> SoftLabelSet:
    """Label reference rows with the teacher's tempered predictions.

    Raises:
        InvalidInputError: On a non-positive temperature or width mismatch
    """
    x_ref = np.atleast_2d(np.asarray(x_ref, dtype=np.float64))
    if temperature <= 0:
        raise InvalidInputError(f"temperature must be positive, got {temperature}")
    if x_ref.shape[0] == 0:
        probs = np.zeros((0, teacher.n_classes))
    else:
        probs = predict_proba(teacher, x_ref, temperature)
    return SoftLabelSet(inputs=x_ref, soft_labels=probs, teacher_temperature=temperature)


def distill(student_arch: Sequence[LayerSpec], softlabels: SoftLabelSet, cfg: DmpConfig) -> Mlp:
    """Train the protected model on soft labels alone.

    The student never sees the private training set: its only data input is
    the soft-label set.

    Args:
        student_arch: Student layer specifications
        softlabels: Reference rows with teacher soft labels
        cfg: Student recipe and temperature

    Returns:
        Protected model

    Raises:
        InvalidInputError: On an empty soft-label set or an incompatible architecture
        TrainingDivergedError: If training diverges
    """
    student_arch = list(student_arch)
    if softlabels.n_samples == 0:
        raise InvalidInputError("soft-label set is empty")
    try:
        check_architecture(student_arch)
    except ValueError as e:
        raise InvalidInputError(f"invalid student architecture: {e}")
    if student_arch[-1].output_dim != softlabels.n_classes:
        raise InvalidInputError(
            f"student output dim {student_arch[-1].output_dim} != soft-label classes {softlabels.n_classes}"
        )
    if student_arch[0].input_dim != softlabels.inputs.shape[1]:
        raise InvalidInputError(
            f"student input dim {student_arch[0].input_dim} != reference width {softlabels.inputs.shape[1]}"
        )

    logger.info(f"Distilling on {softlabels.n_samples} reference rows at T={cfg.student_temperature}")
    result = train_from_scratch(student_arch, softlabels, cfg.student_train, cfg.student_temperature)
    return result.model
