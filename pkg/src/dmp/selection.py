"""Entropy-based reference selection."""

import logging

import numpy as np

from ..errors import InvalidInputError
from ..models.dmp import DmpConfig, ReferenceSelection, SelectionMode
from ..models.network import Mlp
from ..nncore.layers import predict_proba
from ..nncore.losses import entropy


logger = logging.getLogger(__name__)


def prediction_entropy(model: Mlp, x: np.ndarray, temperature: float = 1.0) -> float:
    """Shannon entropy (natural log) of the model's tempered prediction on one sample.

    Raises:
        InvalidInputError: If temperature is not positive or x has the wrong width
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    return float(entropy(predict_proba(model, x, temperature)))


def prediction_entropies(model: Mlp, features: np.ndarray, temperature: float = 1.0) -> np.ndarray:
    """Vectorized prediction_entropy over the rows of a matrix."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if features.shape[0] == 0:
        return np.zeros(0)
    return np.atleast_1d(entropy(predict_proba(model, features, temperature)))


def select_reference(pool: np.ndarray, teacher: Mlp, cfg: DmpConfig) -> ReferenceSelection:
    """Pick the reference rows the student will be distilled on.

    Rows are ranked by teacher prediction entropy at the teacher temperature,
    ascending, with ties broken by pool index.

    Args:
        pool: Unlabeled candidate rows
        teacher: Unprotected model
        cfg: Selection mode, reference size and buckets

    Returns:
        ReferenceSelection with the chosen rows and the whole pool's entropies

    Raises:
        InvalidInputError: On an empty pool, an oversized ref_size or a bad bucket
    """
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    n = pool.shape[0]
    if n == 0:
        raise InvalidInputError("reference pool is empty")
    if cfg.selection != SelectionMode.ALL and cfg.ref_size > n:
        raise InvalidInputError(f"ref_size {cfg.ref_size} exceeds pool size {n}")

    entropies = prediction_entropies(teacher, pool, cfg.teacher_temperature)
    order = np.argsort(entropies, kind="stable")

    if cfg.selection == SelectionMode.LOWEST_ENTROPY:
        indices = order[:cfg.ref_size]
    elif cfg.selection == SelectionMode.ENTROPY_BUCKET:
        if cfg.bucket_index >= cfg.n_buckets:
            raise InvalidInputError(f"bucket_index {cfg.bucket_index} out of range for {cfg.n_buckets} buckets")
        if cfg.n_buckets > n:
            raise InvalidInputError(f"cannot cut {n} rows into {cfg.n_buckets} buckets")
        indices = np.array_split(order, cfg.n_buckets)[cfg.bucket_index]
    else:
        indices = order

    selection = ReferenceSelection(features=pool[indices], indices=indices, pool_entropies=entropies)
    logger.info(
        f"Selected {indices.size}/{n} reference rows ({cfg.selection.value}), mean entropy {selection.mean_entropy:.4f}"
    )
    return selection
