"""Membership inference attack models."""

from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import Field, field_validator, model_validator

from .common import ArrayModel, as_float_matrix
from .network import Mlp


class AttackFeatureKind(str, Enum):
    """Layout tag of an attack feature vector."""

    LOSS = "loss"
    SORTED_PROBS = "sorted_probs"
    NSH_BLACKBOX = "nsh_blackbox"
    NSH_WHITEBOX = "nsh_whitebox"
    DISTANCE = "distance"


SCALAR_FEATURE_KINDS = {AttackFeatureKind.LOSS, AttackFeatureKind.DISTANCE}


class AttackInstanceSet(ArrayModel):
    """Attack feature vectors F(x, y, theta) with ground-truth membership bits."""

    kind: AttackFeatureKind = Field(..., description="Feature layout tag")
    features: np.ndarray = Field(..., description="n x dim feature matrix")
    is_member: np.ndarray = Field(..., description="Membership bit per row")

    @field_validator("features", mode="before")
    @classmethod
    def coerce_features(cls, v):
        return as_float_matrix(v, "features")

    @field_validator("is_member", mode="before")
    @classmethod
    def coerce_bits(cls, v):
        return np.asarray(v, dtype=bool).reshape(-1)

    @model_validator(mode="after")
    def validate_rows(self):
        if self.features.shape[0] != self.is_member.shape[0]:
            raise ValueError("features and is_member must have the same number of rows")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("attack features must be finite")
        return self

    @property
    def dim(self) -> int:
        return int(self.features.shape[1])

    @property
    def n_members(self) -> int:
        return int(self.is_member.sum())

    @property
    def n_nonmembers(self) -> int:
        return int((~self.is_member).sum())

    def members(self) -> np.ndarray:
        return self.features[self.is_member]

    def nonmembers(self) -> np.ndarray:
        return self.features[~self.is_member]

    @classmethod
    def from_groups(cls, kind: AttackFeatureKind, members: np.ndarray, nonmembers: np.ndarray) -> "AttackInstanceSet":
        """Stack member rows then non-member rows."""
        members = np.atleast_2d(np.asarray(members, dtype=np.float64))
        nonmembers = np.atleast_2d(np.asarray(nonmembers, dtype=np.float64))
        return cls(
            kind=kind,
            features=np.vstack([members, nonmembers]),
            is_member=np.concatenate([np.ones(len(members), bool), np.zeros(len(nonmembers), bool)]),
        )


class AttackModel(ArrayModel):
    """Binary membership classifier h: a threshold rule or a small network."""

    feature_kind: AttackFeatureKind = Field(..., description="Feature layout the model consumes")
    threshold: Optional[float] = Field(None, description="Member iff scalar feature < threshold")
    network: Optional[Mlp] = Field(None, description="Two-class network over standardized features")
    feature_mean: Optional[np.ndarray] = Field(None, description="Standardization mean")
    feature_scale: Optional[np.ndarray] = Field(None, description="Standardization scale")

    @model_validator(mode="after")
    def validate_kind(self):
        if (self.threshold is None) == (self.network is None):
            raise ValueError("exactly one of threshold or network must be set")
        if self.threshold is not None and self.feature_kind not in SCALAR_FEATURE_KINDS:
            raise ValueError(f"threshold attacks need scalar features, got {self.feature_kind.value}")
        return self

    def standardize(self, features: np.ndarray) -> np.ndarray:
        features = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if self.feature_mean is None or self.feature_scale is None:
            return features
        return (features - self.feature_mean) / self.feature_scale

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        """Probability of membership for each feature row."""
        features = np.atleast_2d(np.asarray(features, dtype=np.float64))
        if self.threshold is not None:
            return (features[:, 0] < self.threshold).astype(np.float64)
        # Imported lazily: nncore depends on the models package.
        from ..nncore.layers import predict_proba as network_proba

        return network_proba(self.network, self.standardize(features), 1.0)[:, 1]

    def __call__(self, features: np.ndarray) -> np.ndarray:
        return self.predict_proba(features)


class AttackReport(ArrayModel):
    """Result of one attack on one target model."""

    attack: str = Field(..., description="Attack name (bl, nn, nsh_blackbox, ...)")
    accuracy: float = Field(..., ge=0, le=1, description="Balanced held-out accuracy")
    gain: float = Field(..., le=0, description="Empirical log-likelihood gain on the evaluation set")
    threshold_used: Optional[float] = Field(None, description="Threshold picked on the tune split")
    zero_one_accuracy: Optional[float] = Field(None, ge=0, le=1, description="0-1 loss rule accuracy")
    n_members: int = Field(..., ge=0, description="Evaluation members")
    n_nonmembers: int = Field(..., ge=0, description="Evaluation non-members")

    @property
    def advantage(self) -> float:
        return 2.0 * self.accuracy - 1.0

    def __str__(self) -> str:
        return f"{self.attack}: accuracy={self.accuracy:.4f} gain={self.gain:.4f}"


class ReferenceRiskReport(ArrayModel):
    """Attacks that treat X_ref as the member set of the protected model."""

    reports: Dict[str, AttackReport] = Field(default_factory=dict, description="Per-attack reports")

    @property
    def max_accuracy(self) -> float:
        return max(report.accuracy for report in self.reports.values())


class DistanceTrace(ArrayModel):
    """Per-target-sample trace of the adaptive distance attack."""

    min_distance: np.ndarray = Field(..., description="Hamming distance to the nearest reference row")
    nearest_ref_index: np.ndarray = Field(..., description="Index of that reference row")
    nearest_ref_entropy: np.ndarray = Field(..., description="Prediction entropy on the nearest reference row")
    target_entropy: np.ndarray = Field(..., description="Prediction entropy on the target sample")
    is_member: np.ndarray = Field(..., description="Ground-truth membership")

    def rows(self) -> List[tuple]:
        return list(
            zip(
                self.min_distance.tolist(),
                self.nearest_ref_index.tolist(),
                self.nearest_ref_entropy.tolist(),
                self.target_entropy.tolist(),
                self.is_member.astype(int).tolist(),
            )
        )
