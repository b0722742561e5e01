"""Deterministic feedforward-network engine."""

from .layers import forward, predict_proba, sample_dropout_masks, softmax_t
from .losses import cross_entropy, entropy, kl_loss, per_sample_cross_entropy, per_sample_kl
from .backprop import backward, batch_loss, flat_loss_gradient, grad_norms, per_sample_grad_norms
from .training import evaluate, train, train_from_scratch
from .gradcheck import check_gradients, numerical_gradient
from .io import load_model, loads_model, dumps_model, save_model

__all__ = [
    "forward",
    "predict_proba",
    "sample_dropout_masks",
    "softmax_t",
    "cross_entropy",
    "entropy",
    "kl_loss",
    "per_sample_cross_entropy",
    "per_sample_kl",
    "backward",
    "batch_loss",
    "flat_loss_gradient",
    "grad_norms",
    "per_sample_grad_norms",
    "evaluate",
    "train",
    "train_from_scratch",
    "check_gradients",
    "numerical_gradient",
    "load_model",
    "loads_model",
    "dumps_model",
    "save_model",
]
