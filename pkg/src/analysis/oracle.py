"""Leave-one-out retraining."""

import logging
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidInputError
from ..models.analysis import NeighborPair
from ..models.dataset import Dataset
from ..models.network import LayerSpec, TrainConfig
from ..nncore.training import train_from_scratch


logger = logging.getLogger(__name__)


def retrain_oracle(
    d_tr: Dataset,
    removed_index: Optional[int],
    recipe: TrainConfig,
    layers: Sequence[LayerSpec],
) -> NeighborPair:
    """Train on d_tr and on d_tr without one sample, with identical seeds.

    Args:
        d_tr: Training set
        removed_index: Row to drop; None drops nothing and reproduces the first model exactly
        recipe: Training recipe used for both models
        layers: Architecture

    Returns:
        NeighborPair

    Raises:
        InvalidInputError: If d_tr has fewer than 2 rows or the index is out of range
    """
    if d_tr.n_samples < 2:
        raise InvalidInputError("retrain oracle needs at least 2 training rows")
    if removed_index is not None and not (0 <= removed_index < d_tr.n_samples):
        raise InvalidInputError(f"removed_index {removed_index} out of range for {d_tr.n_samples} rows")

    model = train_from_scratch(layers, d_tr, recipe).model
    if removed_index is None:
        neighbor_data = d_tr
    else:
        neighbor_data = d_tr.subset(np.delete(np.arange(d_tr.n_samples), removed_index))
    neighbor = train_from_scratch(layers, neighbor_data, recipe).model
    logger.info(f"Retrain oracle: removed index {removed_index}")
    return NeighborPair(d_tr=d_tr, removed_index=removed_index, model=model, neighbor_model=neighbor)
