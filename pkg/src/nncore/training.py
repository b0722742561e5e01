"""Minibatch training loop and evaluation."""

import logging
from typing import Sequence, Union

import numpy as np

from ..errors import InvalidInputError, TrainingDivergedError
from ..models.dataset import Dataset, SoftLabelSet
from ..models.network import LayerSpec, LossKind, Mlp, TrainConfig
from ..models.training import EvaluationResult, TrainResult
from .backprop import backward
from .layers import predict_proba, sample_dropout_masks
from .losses import per_sample_cross_entropy
from .optim import create_optimizer


logger = logging.getLogger(__name__)


def _training_arrays(data: Union[Dataset, SoftLabelSet], config: TrainConfig):
    if isinstance(data, SoftLabelSet):
        if config.loss != LossKind.KL_DIVERGENCE:
            raise InvalidInputError("soft-label data requires loss=kl_divergence")
        return data.inputs, data.soft_labels
    if isinstance(data, Dataset):
        if config.loss != LossKind.CROSS_ENTROPY:
            raise InvalidInputError("labeled data requires loss=cross_entropy")
        return data.features, data.labels
    raise InvalidInputError(f"unsupported training data type {type(data).__name__}")


def train(
    model: Mlp,
    data: Union[Dataset, SoftLabelSet],
    config: TrainConfig,
    temperature: float = 1.0,
) -> TrainResult:
    """Train a copy of the model with minibatch gradient steps.

    Shuffling and dropout draw from one generator seeded by config.seed, so
    identical inputs give bitwise-identical weights.

    Args:
        model: Initial network (left untouched)
        data: Labeled dataset (cross_entropy) or soft-label set (kl_divergence)
        config: Training recipe
        temperature: Softmax temperature applied to the logits during training

    Returns:
        TrainResult with the trained model and per-epoch mean loss

    Raises:
        InvalidInputError: On empty data, dimension or loss/data mismatch
        TrainingDivergedError: If a non-finite loss is encountered
    """
    inputs, targets = _training_arrays(data, config)
    n = inputs.shape[0]
    if n == 0:
        raise InvalidInputError("training data must be nonempty")
    if inputs.shape[1] != model.input_dim:
        raise InvalidInputError(f"data width {inputs.shape[1]} != model input_dim {model.input_dim}")

    trained = model.clone()
    if config.epochs == 0:
        return TrainResult(model=trained, loss_trace=[])

    rng = np.random.default_rng(config.seed)
    optimizer = create_optimizer(config)
    trace = []
    logger.info(f"Training {trained} on {n} rows for {config.epochs} epochs ({config.loss.value}, T={temperature})")

    for epoch in range(config.epochs):
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, config.batch_size):
            batch = order[start:start + config.batch_size]
            masks = sample_dropout_masks(trained, batch.size, config.dropout_rate, rng)
            try:
                grads = backward(trained, inputs[batch], targets[batch], config, masks, temperature)
            except InvalidInputError:
                if not all(np.all(np.isfinite(w)) for w in trained.weights):
                    raise TrainingDivergedError(epoch, float("nan"))
                raise
            if not np.isfinite(grads.loss):
                raise TrainingDivergedError(epoch, grads.loss)
            optimizer.step(trained, grads)
            total += grads.loss * batch.size
        epoch_loss = total / n
        trace.append(epoch_loss)
        logger.debug(f"epoch {epoch}: mean loss {epoch_loss:.6f}")

    if not all(np.all(np.isfinite(w)) for w in trained.weights):
        raise TrainingDivergedError(config.epochs - 1, float("nan"))
    logger.info(f"Training finished: loss {trace[0]:.4f} -> {trace[-1]:.4f}")
    return TrainResult(model=trained, loss_trace=trace)


def train_from_scratch(
    layers: Sequence[LayerSpec],
    data: Union[Dataset, SoftLabelSet],
    config: TrainConfig,
    temperature: float = 1.0,
) -> TrainResult:
    """Initialize with config.seed, then train."""
    return train(Mlp.initialize(layers, config.seed), data, config, temperature)


def evaluate(model: Mlp, data: Dataset, temperature: float = 1.0) -> EvaluationResult:
    """Accuracy (argmax, temperature-independent) and mean cross-entropy at the temperature.

    Raises:
        InvalidInputError: On empty data or dimension mismatch
    """
    if data.n_samples == 0:
        raise InvalidInputError("evaluation data must be nonempty")
    probs = predict_proba(model, data.features, temperature)
    accuracy = float(np.mean(np.argmax(probs, axis=1) == data.labels))
    mean_loss = float(per_sample_cross_entropy(probs, data.labels).mean())
    return EvaluationResult(accuracy=accuracy, mean_loss=max(mean_loss, 0.0), n_samples=data.n_samples)
