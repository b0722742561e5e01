"""Analytic gradients of the training losses."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError
from ..models.network import Activation, LossKind, Mlp, TrainConfig
from ..models.training import GradNorms, Gradients
from .layers import forward_cache, softmax_t
from .losses import safe_log, entropy, per_sample_cross_entropy, per_sample_kl, smoothed_targets


logger = logging.getLogger(__name__)


def _check_targets(targets: np.ndarray, config: TrainConfig, n_rows: int, n_classes: int) -> np.ndarray:
    targets = np.asarray(targets)
    if config.loss == LossKind.CROSS_ENTROPY:
        if targets.ndim != 1 or not np.issubdtype(targets.dtype, np.integer):
            raise InvalidInputError("cross_entropy training needs integer class labels")
    else:
        if targets.ndim != 2 or targets.shape[1] != n_classes:
            raise InvalidInputError("kl_divergence training needs soft-label rows, one column per class")
        if np.any(np.abs(targets.sum(axis=1) - 1.0) > 1e-6):
            raise InvalidInputError("kl_divergence targets must sum to 1 per row")
    if targets.shape[0] != n_rows:
        raise InvalidInputError(f"{targets.shape[0]} targets for {n_rows} inputs")
    return targets


def output_delta(
    logits: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    temperature: float = 1.0,
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-sample losses and dLoss/dlogits (not averaged over the batch).

    The loss is evaluated on softmax(logits / temperature); the chain rule
    contributes the 1/temperature factor.
    """
    probs = softmax_t(logits, temperature)
    if config.loss == LossKind.CROSS_ENTROPY:
        losses = per_sample_cross_entropy(probs, targets, config.label_smoothing, config.confidence_penalty)
        q = smoothed_targets(targets, probs.shape[1], config.label_smoothing)
        grad_u = probs - q
        if config.confidence_penalty:
            h = np.atleast_1d(entropy(probs))[:, None]
            grad_u = grad_u + config.confidence_penalty * probs * (safe_log(probs) + h)
    else:
        losses = per_sample_kl(targets, probs)
        grad_u = probs - targets
    return losses, grad_u / temperature


def backward(
    model: Mlp,
    inputs: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    dropout_masks: Optional[Sequence[np.ndarray]] = None,
    temperature: float = 1.0,
) -> Gradients:
    """Exact gradients of the mean batch loss.

    Args:
        model: Network
        inputs: n x d batch
        targets: Class indices (cross_entropy) or soft-label rows (kl_divergence)
        config: Recipe providing the loss and its regularizers
        dropout_masks: Masks held fixed for this call
        temperature: Softmax temperature applied to the logits

    Returns:
        Gradients including the weight-decay term (decay * W on weights)

    Raises:
        InvalidInputError: If the target kind does not match config.loss or the batch is empty
    """
    inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    n = inputs.shape[0]
    if n == 0:
        raise InvalidInputError("batch must be nonempty")
    targets = _check_targets(targets, config, n, model.n_classes)

    activations, pre_activations = forward_cache(model, inputs, dropout_masks)
    losses, delta = output_delta(activations[-1], targets, config, temperature)
    delta = delta / n

    grad_w: List[np.ndarray] = [None] * model.n_layers
    grad_b: List[np.ndarray] = [None] * model.n_layers
    for i in range(model.n_layers - 1, -1, -1):
        grad_w[i] = delta.T @ activations[i]
        grad_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = delta @ model.weights[i]
            if dropout_masks is not None:
                delta = delta * dropout_masks[i - 1]
            if model.layers[i - 1].activation == Activation.RELU:
                delta = delta * (pre_activations[i - 1] > 0.0)

    loss = float(losses.mean())
    if config.weight_decay:
        for i, w in enumerate(model.weights):
            grad_w[i] = grad_w[i] + config.weight_decay * w
            loss += 0.5 * config.weight_decay * float(np.sum(w * w))

    return Gradients(weights=grad_w, biases=grad_b, loss=loss)


def batch_loss(
    model: Mlp,
    inputs: np.ndarray,
    targets: np.ndarray,
    config: TrainConfig,
    dropout_masks: Optional[Sequence[np.ndarray]] = None,
    temperature: float = 1.0,
) -> float:
    """Mean batch loss exactly as differentiated by backward."""
    inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    targets = _check_targets(targets, config, inputs.shape[0], model.n_classes)
    activations, _ = forward_cache(model, inputs, dropout_masks)
    losses, _ = output_delta(activations[-1], targets, config, temperature)
    loss = float(losses.mean())
    if config.weight_decay:
        loss += 0.5 * config.weight_decay * sum(float(np.sum(w * w)) for w in model.weights)
    return loss


def flat_loss_gradient(model: Mlp, inputs: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Flat gradient of the plain mean cross-entropy at T=1."""
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    return backward(model, inputs, labels, TrainConfig()).flat()


def per_sample_grad_norms(model: Mlp, inputs: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Per-layer and total L2 norms of each sample's cross-entropy gradient.

    The per-sample gradient of layer i is outer(delta, a_prev) for the
    weights and delta for the bias, so its norm is ||delta|| * sqrt(||a_prev||^2 + 1).

    Returns:
        n x (n_layers + 1) matrix; the last column is the total norm
    """
    inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    config = TrainConfig()
    targets = _check_targets(labels, config, inputs.shape[0], model.n_classes)

    activations, pre_activations = forward_cache(model, inputs)
    _, delta = output_delta(activations[-1], targets, config)

    norms = np.zeros((inputs.shape[0], model.n_layers + 1))
    for i in range(model.n_layers - 1, -1, -1):
        a_norm_sq = np.sum(activations[i] ** 2, axis=1)
        d_norm = np.linalg.norm(delta, axis=1)
        norms[:, i] = d_norm * np.sqrt(a_norm_sq + 1.0)
        if i > 0:
            delta = delta @ model.weights[i]
            if model.layers[i - 1].activation == Activation.RELU:
                delta = delta * (pre_activations[i - 1] > 0.0)
    norms[:, -1] = np.sqrt(np.sum(norms[:, :-1] ** 2, axis=1))
    return norms


def grad_norms(model: Mlp, x: np.ndarray, y: int) -> GradNorms:
    """Per-layer and total gradient norms of one sample's cross-entropy loss."""
    norms = per_sample_grad_norms(model, np.asarray(x, dtype=np.float64).reshape(1, -1), np.array([y]))[0]
    return GradNorms(per_layer=norms[:-1], total=float(norms[-1]))
