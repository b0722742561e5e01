"""Forward pass, temperature softmax and dropout masks."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError
from ..models.network import Activation, Mlp


logger = logging.getLogger(__name__)


def softmax_t(logits: np.ndarray, temperature: float = 1.0) -> np.ndarray:
    """Temperature-scaled softmax over the last axis.

    Args:
        logits: Vector or matrix of logits
        temperature: Positive divisor applied to the logits

    Returns:
        Probabilities with the same shape as logits

    Raises:
        InvalidInputError: If temperature <= 0 or logits are not finite
    """
    if not temperature > 0:
        raise InvalidInputError(f"temperature must be positive, got {temperature}")
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise InvalidInputError("logits must be finite")
    scaled = logits / temperature
    scaled = scaled - scaled.max(axis=-1, keepdims=True)
    exp = np.exp(scaled)
    return exp / exp.sum(axis=-1, keepdims=True)


def _check_masks(model: Mlp, masks: Optional[Sequence[np.ndarray]], n_rows: int) -> None:
    if masks is None:
        return
    widths = model.hidden_widths
    if len(masks) != len(widths):
        raise InvalidInputError(f"expected {len(widths)} dropout masks, got {len(masks)}")
    for i, (mask, width) in enumerate(zip(masks, widths)):
        mask = np.asarray(mask)
        if mask.shape[-1] != width or (mask.ndim == 2 and mask.shape[0] != n_rows):
            raise InvalidInputError(f"dropout mask {i} shape {mask.shape} does not match hidden width {width}")


def forward_cache(
    model: Mlp,
    inputs: np.ndarray,
    dropout_masks: Optional[Sequence[np.ndarray]] = None,
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Run the network keeping every intermediate value for backprop.

    Args:
        model: Network
        inputs: 2-D input matrix (rows are samples)
        dropout_masks: Optional multiplicative masks for the hidden activations

    Returns:
        (activations, pre_activations): activations[0] is the input and
        activations[-1] the logits; pre_activations[i] is layer i's affine output
    """
    if inputs.ndim != 2 or inputs.shape[1] != model.input_dim:
        raise InvalidInputError(
            f"input width {inputs.shape[-1] if inputs.ndim else 0} does not match model input_dim {model.input_dim}"
        )
    _check_masks(model, dropout_masks, inputs.shape[0])

    activations = [inputs]
    pre_activations = []
    a = inputs
    last = model.n_layers - 1
    for i, (spec, w, b) in enumerate(zip(model.layers, model.weights, model.biases)):
        z = a @ w.T + b
        pre_activations.append(z)
        a = np.maximum(z, 0.0) if spec.activation == Activation.RELU else z
        if dropout_masks is not None and i < last:
            a = a * dropout_masks[i]
        activations.append(a)
    return activations, pre_activations


def forward(
    model: Mlp,
    x: np.ndarray,
    dropout_mask: Optional[Sequence[np.ndarray]] = None,
) -> np.ndarray:
    """Compute pre-softmax logits for one sample or a batch.

    Args:
        model: Network
        x: Feature vector or matrix of row vectors
        dropout_mask: Optional per-hidden-layer masks

    Returns:
        Logits (vector for vector input, matrix for matrix input)

    Raises:
        InvalidInputError: On dimension mismatch
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    inputs = x.reshape(1, -1) if single else x
    masks = None
    if dropout_mask is not None:
        masks = [np.asarray(m, dtype=np.float64).reshape(1, -1) if single else np.asarray(m, dtype=np.float64)
                 for m in dropout_mask]
    activations, _ = forward_cache(model, inputs, masks)
    logits = activations[-1]
    return logits[0] if single else logits


def predict_proba(model: Mlp, x: np.ndarray, temperature: float = 1.0) -> np.ndarray:
    """softmax_t(forward(model, x), temperature) for a sample or a batch."""
    return softmax_t(forward(model, x), temperature)


def sample_dropout_masks(
    model: Mlp,
    n_rows: int,
    rate: float,
    rng: np.random.Generator,
) -> Optional[List[np.ndarray]]:
    """Draw inverted-dropout masks (kept units scaled by 1/(1-rate)).

    Returns:
        One (n_rows x width) mask per hidden layer, or None when rate is 0
    """
    if rate <= 0.0:
        return None
    keep = 1.0 - rate
    return [(rng.random((n_rows, width)) < keep) / keep for width in model.hidden_widths]
