"""Central finite-difference gradient verification."""

import logging
from typing import Optional, Sequence

import numpy as np

from ..models.network import Mlp, TrainConfig
from .backprop import backward, batch_loss


logger = logging.getLogger(__name__)


def numerical_gradient(
    model: Mlp,
    inputs: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    dropout_masks: Optional[Sequence[np.ndarray]] = None,
    temperature: float = 1.0,
    step: float = 1e-5,
) -> np.ndarray:
    """Flat central-difference gradient of batch_loss."""
    flat = model.flat_parameters()
    grad = np.zeros_like(flat)
    for j in range(flat.size):
        original = flat[j]
        flat[j] = original + step
        plus = batch_loss(model.with_flat_parameters(flat), inputs, targets, config, dropout_masks, temperature)
        flat[j] = original - step
        minus = batch_loss(model.with_flat_parameters(flat), inputs, targets, config, dropout_masks, temperature)
        flat[j] = original
        grad[j] = (plus - minus) / (2.0 * step)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray, floor: float = 1e-12) -> float:
    """||a - n|| / max(||a|| + ||n||, floor) over the whole gradient vector."""
    denom = max(float(np.linalg.norm(analytic) + np.linalg.norm(numeric)), floor)
    return float(np.linalg.norm(analytic - numeric)) / denom


def check_gradients(
    model: Mlp,
    inputs: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    dropout_masks: Optional[Sequence[np.ndarray]] = None,
    temperature: float = 1.0,
    step: float = 1e-5,
) -> float:
    """Relative error ||a - n|| / (||a|| + ||n||) between the flattened backward and central-difference gradients."""
    analytic = backward(model, inputs, targets, config, dropout_masks, temperature).flat()
    numeric = numerical_gradient(model, inputs, targets, config, dropout_masks, temperature, step)
    error = relative_error(analytic, numeric)
    logger.debug(f"gradient check on {model.n_parameters} parameters: relative error {error:.3e}")
    return error
