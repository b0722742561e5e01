"""Dataset, split-plan and soft-label models."""

from enum import Enum
from typing import Dict, Optional

import numpy as np
from pydantic import Field, field_validator, model_validator

from .common import ArrayModel, as_float_matrix, is_distribution_rows


class FeatureKind(str, Enum):
    """Feature encoding of a dataset."""

    BINARY = "binary"
    CONTINUOUS = "continuous"


class Dataset(ArrayModel):
    """Labeled feature matrix with its class count."""

    features: np.ndarray = Field(..., description="n_samples x n_features float64 matrix")
    labels: np.ndarray = Field(..., description="Class index per row")
    n_classes: int = Field(..., ge=1, description="Number of classes")
    feature_kind: FeatureKind = Field(default=FeatureKind.CONTINUOUS, description="Feature encoding")
    sample_ids: Optional[np.ndarray] = Field(None, description="Row indices into the generated dataset")

    @field_validator("features", mode="before")
    @classmethod
    def coerce_features(cls, v):
        return as_float_matrix(v, "features")

    @field_validator("labels", mode="before")
    @classmethod
    def coerce_labels(cls, v):
        return np.asarray(v, dtype=np.int64).reshape(-1)

    @field_validator("sample_ids", mode="before")
    @classmethod
    def coerce_ids(cls, v):
        if v is None:
            return None
        return np.asarray(v, dtype=np.int64).reshape(-1)

    @model_validator(mode="after")
    def validate_dataset(self):
        if self.labels.shape[0] != self.features.shape[0]:
            raise ValueError(
                f"labels length {self.labels.shape[0]} != feature rows {self.features.shape[0]}"
            )
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.n_classes):
            raise ValueError(f"labels must lie in [0, {self.n_classes})")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features must be finite")
        if self.feature_kind == FeatureKind.BINARY and not np.all(
            (self.features == 0.0) | (self.features == 1.0)
        ):
            raise ValueError("binary dataset has entries outside {0, 1}")
        if self.sample_ids is not None and self.sample_ids.shape[0] != self.labels.shape[0]:
            raise ValueError("sample_ids length must match the number of rows")
        return self

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    def subset(self, indices: np.ndarray) -> "Dataset":
        """Select rows (sample_ids follow the rows)."""
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            features=self.features[indices],
            labels=self.labels[indices],
            n_classes=self.n_classes,
            feature_kind=self.feature_kind,
            sample_ids=None if self.sample_ids is None else self.sample_ids[indices],
        )

    def features_only(self) -> np.ndarray:
        """Unlabeled copy of the feature matrix."""
        return self.features.copy()

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)

    def __str__(self) -> str:
        return f"Dataset(n={self.n_samples}, d={self.n_features}, c={self.n_classes}, kind={self.feature_kind.value})"


class SplitPlan(ArrayModel):
    """Sizes of the disjoint parts carved from one generated dataset."""

    seed: int = Field(default=0, ge=0, lt=2**64, description="Shuffle seed")
    d_tr: int = Field(default=10000, ge=1, description="Private training set D_tr")
    x_ref_pool: int = Field(default=20000, ge=0, description="Reference pool X_ref is selected from")
    d_test: int = Field(default=5000, ge=1, description="Test set, also the non-member evaluation source")
    shadow: int = Field(default=10000, ge=0, description="Shadow data for the NN attack")
    attack_members_known: int = Field(default=5000, ge=0, description="Members of D_tr known to the adversary")
    attack_nonmembers_known: int = Field(default=5000, ge=0, description="Non-members known to the adversary")

    @model_validator(mode="after")
    def validate_members_known(self):
        if 2 * self.attack_members_known > self.d_tr:
            raise ValueError("attack_members_known must not exceed half of d_tr")
        return self

    @property
    def disjoint_sizes(self) -> Dict[str, int]:
        """Sizes of the pairwise-disjoint parts (known members live inside d_tr)."""
        return {
            "d_tr": self.d_tr,
            "x_ref_pool": self.x_ref_pool,
            "d_test": self.d_test,
            "shadow": self.shadow,
            "attack_nonmembers_known": self.attack_nonmembers_known,
        }

    @property
    def total(self) -> int:
        return sum(self.disjoint_sizes.values())


class SplitParts(ArrayModel):
    """Named datasets produced by a split, including the attack sets."""

    d_tr: Dataset
    x_ref_pool: Dataset
    d_test: Dataset
    shadow: Dataset
    attack_members_known: Dataset
    attack_nonmembers_known: Dataset
    eval_members: Dataset
    eval_nonmembers: Dataset

    def named(self) -> Dict[str, Dataset]:
        return {name: getattr(self, name) for name in type(self).model_fields}


class SoftLabelSet(ArrayModel):
    """Reference inputs paired with temperature-scaled teacher predictions."""

    inputs: np.ndarray = Field(..., description="Reference feature matrix")
    soft_labels: np.ndarray = Field(..., description="Probability rows, one per input")
    teacher_temperature: float = Field(..., gt=0, description="Temperature used by the teacher")

    @field_validator("inputs", "soft_labels", mode="before")
    @classmethod
    def coerce_matrices(cls, v, info):
        return as_float_matrix(v, info.field_name)

    @model_validator(mode="after")
    def validate_rows(self):
        if self.inputs.shape[0] != self.soft_labels.shape[0]:
            raise ValueError(
                f"inputs rows {self.inputs.shape[0]} != soft_labels rows {self.soft_labels.shape[0]}"
            )
        if not is_distribution_rows(self.soft_labels):
            raise ValueError("every soft-label row must be a probability distribution")
        return self

    @property
    def n_samples(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def n_classes(self) -> int:
        return int(self.soft_labels.shape[1])
