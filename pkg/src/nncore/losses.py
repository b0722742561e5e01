"""Cross-entropy, KL and entropy losses on probability vectors."""

import numpy as np

from ..errors import InvalidInputError
from ..models.common import PROBABILITY_FLOOR


def safe_log(probs: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(probs, PROBABILITY_FLOOR))


def entropy(probs: np.ndarray) -> np.ndarray | float:
    """Shannon entropy (natural log) over the last axis, with 0 log 0 = 0."""
    probs = np.asarray(probs, dtype=np.float64)
    terms = np.where(probs > 0.0, -probs * safe_log(probs), 0.0)
    result = terms.sum(axis=-1)
    return float(result) if result.ndim == 0 else result


def smoothed_targets(labels: np.ndarray, n_classes: int, label_smoothing: float = 0.0) -> np.ndarray:
    """One-hot labels mixed with label_smoothing of uniform mass.

    Raises:
        InvalidInputError: If a label is outside [0, n_classes)
    """
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise InvalidInputError(f"label out of range for {n_classes} classes")
    targets = np.full((labels.size, n_classes), label_smoothing / n_classes)
    targets[np.arange(labels.size), labels] += 1.0 - label_smoothing
    return targets


def per_sample_cross_entropy(
    probs: np.ndarray,
    labels: np.ndarray,
    label_smoothing: float = 0.0,
    confidence_penalty: float = 0.0,
) -> np.ndarray:
    """Row-wise regularized cross-entropy.

    Args:
        probs: n x c probability rows
        labels: n class indices
        label_smoothing: Uniform label mass
        confidence_penalty: Weight of the subtracted prediction entropy

    Returns:
        Vector of n losses
    """
    probs = np.atleast_2d(np.asarray(probs, dtype=np.float64))
    targets = smoothed_targets(labels, probs.shape[1], label_smoothing)
    if targets.shape[0] != probs.shape[0]:
        raise InvalidInputError(f"{targets.shape[0]} labels for {probs.shape[0]} probability rows")
    losses = -(targets * safe_log(probs)).sum(axis=1)
    if confidence_penalty:
        losses = losses - confidence_penalty * np.atleast_1d(entropy(probs))
    return losses


def cross_entropy(
    probs: np.ndarray,
    label: int,
    label_smoothing: float = 0.0,
    confidence_penalty: float = 0.0,
) -> float:
    """Cross-entropy of one prediction against a (smoothed) label, minus confidence_penalty * H(probs).

    Raises:
        InvalidInputError: If label is out of range
    """
    return float(per_sample_cross_entropy(probs, np.array([label]), label_smoothing, confidence_penalty)[0])


def per_sample_kl(targets: np.ndarray, student_probs: np.ndarray) -> np.ndarray:
    """Row-wise KL(target || student) with 0 log(0/p) = 0."""
    targets = np.atleast_2d(np.asarray(targets, dtype=np.float64))
    student_probs = np.atleast_2d(np.asarray(student_probs, dtype=np.float64))
    if targets.shape != student_probs.shape:
        raise InvalidInputError(f"target shape {targets.shape} != student shape {student_probs.shape}")
    positive = targets > 0.0
    terms = np.where(positive, targets * (safe_log(targets) - safe_log(student_probs)), 0.0)
    return terms.sum(axis=1)


def kl_loss(target: np.ndarray, student_probs: np.ndarray) -> float:
    """KL divergence of the student distribution from the soft label.

    Raises:
        InvalidInputError: On length mismatch
    """
    target = np.asarray(target, dtype=np.float64)
    student_probs = np.asarray(student_probs, dtype=np.float64)
    if target.shape != student_probs.shape:
        raise InvalidInputError(f"length mismatch: {target.shape} vs {student_probs.shape}")
    return float(per_sample_kl(target, student_probs)[0])
