"""Configuration and result models of the distillation pipeline."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from .common import ArrayModel
from .dataset import SoftLabelSet
from .network import LossKind, Mlp, TrainConfig
from .report import ExperimentReport


class SelectionMode(str, Enum):
    """How reference rows are chosen from the pool."""

    LOWEST_ENTROPY = "lowest_entropy"
    ENTROPY_BUCKET = "entropy_bucket"
    ALL = "all"


class DmpConfig(ArrayModel):
    """Knobs of the three-phase defense."""

    teacher_temperature: float = Field(default=1.0, gt=0, description="Softmax temperature of the soft labels")
    student_temperature: Optional[float] = Field(None, gt=0, description="Temperature applied to student logits (defaults to teacher)")
    ref_size: int = Field(default=10000, ge=1, description="Number of reference rows to distill on")
    selection: SelectionMode = Field(default=SelectionMode.LOWEST_ENTROPY, description="Reference selection rule")
    bucket_index: int = Field(default=0, ge=0, description="Bucket used by entropy_bucket selection")
    n_buckets: int = Field(default=5, ge=1, description="Number of entropy buckets")
    teacher_train: TrainConfig = Field(default_factory=TrainConfig, description="Recipe for the unprotected model")
    student_train: TrainConfig = Field(
        default_factory=lambda: TrainConfig(loss=LossKind.KL_DIVERGENCE),
        description="Recipe for the protected model",
    )

    @model_validator(mode="after")
    def validate_student(self):
        if self.student_train.loss != LossKind.KL_DIVERGENCE:
            raise ValueError("student_train.loss must be kl_divergence")
        if self.student_temperature is None:
            self.student_temperature = self.teacher_temperature
        return self


class Regularizer(str, Enum):
    """Baseline regularizers compared against the defense."""

    NONE = "none"
    WEIGHT_DECAY = "wd"
    DROPOUT = "dr"
    LABEL_SMOOTHING = "ls"
    CONFIDENCE_PENALTY = "cp"


class ReferenceSelection(ArrayModel):
    """Selected reference rows and the entropy trace over the whole pool."""

    features: np.ndarray = Field(..., description="Selected rows, ascending entropy")
    indices: np.ndarray = Field(..., description="Pool indices of the selected rows")
    pool_entropies: np.ndarray = Field(..., description="Prediction entropy of every pool row")

    @property
    def selected_entropies(self) -> np.ndarray:
        return self.pool_entropies[self.indices]

    @property
    def mean_entropy(self) -> float:
        return float(self.selected_entropies.mean()) if self.indices.size else float("nan")


class PipelineResult(ArrayModel):
    """Everything produced by one run of the defense."""

    unprotected: Mlp
    protected: Mlp
    soft_labels: SoftLabelSet
    selection: ReferenceSelection
    report: ExperimentReport
