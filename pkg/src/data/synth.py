"""Synthetic Purchase-style binary classification data."""

import logging

import numpy as np

from ..errors import InvalidInputError
from ..models.dataset import Dataset, FeatureKind


logger = logging.getLogger(__name__)


def synth_purchase(
    n_samples: int = 20000,
    n_features: int = 600,
    n_classes: int = 100,
    cluster_noise: float = 0.15,
    seed: int = 7,
) -> Dataset:
    """Generate binary feature vectors clustered around one centroid per class.

    Each class draws a random binary centroid; samples are assigned to
    classes round-robin and emitted as their centroid with every bit flipped
    independently with probability cluster_noise.

    Args:
        n_samples: Number of rows
        n_features: Feature vector length
        n_classes: Number of classes
        cluster_noise: Bit-flip probability in [0, 0.5)
        seed: Generator seed

    Returns:
        Binary Dataset with balanced labels (class counts differ by at most 1)

    Raises:
        InvalidInputError: If cluster_noise is outside [0, 0.5) or sizes are infeasible
    """
    if not (0.0 <= cluster_noise < 0.5):
        raise InvalidInputError(f"cluster_noise must lie in [0, 0.5), got {cluster_noise}")
    if n_classes < 1 or n_features < 1:
        raise InvalidInputError("n_classes and n_features must be positive")
    if n_classes > n_samples:
        raise InvalidInputError(f"n_classes ({n_classes}) exceeds n_samples ({n_samples})")

    rng = np.random.default_rng(seed)
    centroids = rng.integers(0, 2, size=(n_classes, n_features)).astype(np.float64)
    labels = np.arange(n_samples, dtype=np.int64) % n_classes
    flips = rng.random((n_samples, n_features)) < cluster_noise
    features = np.abs(centroids[labels] - flips)

    logger.info(
        f"Generated synthetic dataset: n={n_samples}, d={n_features}, c={n_classes}, noise={cluster_noise}"
    )
    return Dataset(
        features=features,
        labels=labels,
        n_classes=n_classes,
        feature_kind=FeatureKind.BINARY,
        sample_ids=np.arange(n_samples),
    )


def perturb_synth_ref(d_tr: Dataset, flip_probability: float, n_out: int, seed: int) -> np.ndarray:
    """Synthesize unlabeled reference rows by bit-flipping resampled training rows.

    Args:
        d_tr: Binary training set to resample
        flip_probability: Per-bit flip probability in (0, 0.5)
        n_out: Number of rows to produce
        seed: Generator seed

    Returns:
        n_out x n_features binary matrix

    Raises:
        InvalidInputError: On out-of-range arguments or non-binary data
    """
    if not (0.0 < flip_probability < 0.5):
        raise InvalidInputError(f"flip_probability must lie in (0, 0.5), got {flip_probability}")
    if n_out < 0:
        raise InvalidInputError("n_out must be non-negative")
    if d_tr.feature_kind != FeatureKind.BINARY:
        raise InvalidInputError("perturbation synthesis needs binary features")
    if n_out == 0:
        return np.zeros((0, d_tr.n_features))
    if d_tr.n_samples == 0:
        raise InvalidInputError("cannot resample an empty dataset")

    rng = np.random.default_rng(seed)
    sources = rng.integers(0, d_tr.n_samples, size=n_out)
    flips = rng.random((n_out, d_tr.n_features)) < flip_probability
    return np.abs(d_tr.features[sources] - flips)
