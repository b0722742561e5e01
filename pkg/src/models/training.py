"""Results produced by the training engine."""

from typing import List

import numpy as np
from pydantic import Field

from .common import ArrayModel
from .network import Mlp


class Gradients(ArrayModel):
    """Per-layer gradients of the mean batch loss."""

    weights: List[np.ndarray] = Field(..., description="dL/dW per layer")
    biases: List[np.ndarray] = Field(..., description="dL/db per layer")
    loss: float = Field(..., description="Mean batch loss including the weight-decay term")

    def flat(self) -> np.ndarray:
        """Flatten in the same order as Mlp.flat_parameters."""
        parts = []
        for w, b in zip(self.weights, self.biases):
            parts.append(w.ravel())
            parts.append(b)
        return np.concatenate(parts)


class TrainResult(ArrayModel):
    """Trained network plus the per-epoch mean loss trace."""

    model: Mlp
    loss_trace: List[float] = Field(default_factory=list, description="Mean training loss per epoch")

    @property
    def final_loss(self) -> float:
        return self.loss_trace[-1] if self.loss_trace else float("nan")


class EvaluationResult(ArrayModel):
    """Accuracy and mean cross-entropy on a dataset."""

    accuracy: float = Field(..., ge=0, le=1, description="Fraction of argmax-correct rows")
    mean_loss: float = Field(..., ge=0, description="Mean cross-entropy at the evaluation temperature")
    n_samples: int = Field(..., ge=0, description="Rows evaluated")


class GradNorms(ArrayModel):
    """L2 norms of the per-sample cross-entropy gradient."""

    per_layer: np.ndarray = Field(..., description="Norm of (W, b) gradient per layer")
    total: float = Field(..., ge=0, description="Norm over all parameters")
