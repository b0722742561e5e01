"""Models used by the theory-validation analyses."""

from typing import Dict, List, Optional

import numpy as np
from pydantic import Field, model_validator

from .common import ArrayModel
from .dataset import Dataset
from .network import Mlp


class NeighborPair(ArrayModel):
    """Two models trained on datasets that differ in one sample."""

    d_tr: Dataset = Field(..., description="Full training set")
    removed_index: Optional[int] = Field(None, description="Row removed for the neighbor model (None: nothing removed)")
    model: Mlp = Field(..., description="Model trained on d_tr")
    neighbor_model: Mlp = Field(..., description="Model trained on d_tr minus the removed row")

    @model_validator(mode="after")
    def validate_index(self):
        if self.removed_index is not None and not (0 <= self.removed_index < self.d_tr.n_samples):
            raise ValueError(f"removed_index {self.removed_index} out of range")
        return self

    @property
    def removed_sample(self) -> Optional[tuple]:
        if self.removed_index is None:
            return None
        return self.d_tr.features[self.removed_index], int(self.d_tr.labels[self.removed_index])


class RatioTrace(ArrayModel):
    """Per-reference-row terms of the posterior-ratio bound."""

    delta_kl: np.ndarray = Field(..., description="|KL(up||p) - KL(up'||p)| per row")
    signed_delta_kl: np.ndarray = Field(..., description="KL(up||p) - KL(up'||p) per row")
    delta_ce: np.ndarray = Field(..., description="|CE(up) - CE(up')| per row")
    entropy: np.ndarray = Field(..., description="Entropy of the unprotected prediction per row")
    approx_influence: Optional[np.ndarray] = Field(None, description="|influence approximation| per row")

    @model_validator(mode="after")
    def validate_trace(self):
        n = self.delta_kl.shape[0]
        for name in ("signed_delta_kl", "delta_ce", "entropy"):
            if getattr(self, name).shape[0] != n:
                raise ValueError(f"{name} length differs from delta_kl")
        for name in ("delta_kl", "delta_ce", "entropy"):
            values = getattr(self, name)
            if not np.all(np.isfinite(values)) or np.any(values < 0):
                raise ValueError(f"{name} must be finite and non-negative")
        if self.approx_influence is not None:
            if self.approx_influence.shape[0] != n or np.any(self.approx_influence < 0):
                raise ValueError("approx_influence must be non-negative with one entry per row")
        return self

    def __len__(self) -> int:
        return int(self.delta_kl.shape[0])


class RatioBound(ArrayModel):
    """Triangle-inequality bound on the log posterior ratio."""

    trace: RatioTrace
    temperature: float = Field(..., gt=0)
    bound: float = Field(..., ge=0, description="(1/T) * sum |delta KL|")
    signed_value: float = Field(..., ge=0, description="|-(1/T) * sum signed delta KL|")


class CorrelationReport(ArrayModel):
    """Correlations behind the reference-selection argument."""

    pearson_dkl_dce: float = Field(..., ge=-1, le=1)
    spearman_entropy_dkl: float = Field(..., ge=-1, le=1)


class HistogramRow(ArrayModel):
    bin_left: float
    bin_right: float
    member_frac: float = Field(..., ge=0, le=1)
    nonmember_frac: float = Field(..., ge=0, le=1)


class DistributionReport(ArrayModel):
    """Member/non-member distributions of gradient norms and losses."""

    grad_norm_histogram: List[HistogramRow]
    loss_histogram: List[HistogramRow]
    member_median_norm: float
    nonmember_median_norm: float
    per_class_e_gen: Dict[int, float] = Field(default_factory=dict, description="Train minus test accuracy per class")

    @property
    def median_gap(self) -> float:
        return self.nonmember_median_norm - self.member_median_norm

    def e_gen_cdf(self) -> List[tuple]:
        """Empirical CDF points (value, fraction of classes <= value)."""
        values = np.sort(np.fromiter(self.per_class_e_gen.values(), dtype=np.float64))
        n = values.size
        return [(float(v), (i + 1) / n) for i, v in enumerate(values)]
