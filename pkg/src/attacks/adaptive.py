"""Adaptive attack scoring targets by Hamming distance to the reference set."""

import logging
from typing import Tuple

import numpy as np

from ..dmp.selection import prediction_entropies
from ..errors import InvalidInputError
from ..models.attack import AttackFeatureKind, AttackReport, DistanceTrace
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..utils.distance import is_binary, nearest_hamming
from ..utils.stats import balanced_sizes
from .threshold import threshold_attack


logger = logging.getLogger(__name__)


def adaptive_distance_attack(
    protected: Mlp,
    x_ref: np.ndarray,
    eval_members: Dataset,
    eval_nonmembers: Dataset,
) -> Tuple[AttackReport, DistanceTrace]:
    """Predict membership when a target lies close to some reference row.

    The score is the Hamming distance to the nearest reference row; the
    threshold is tuned and evaluated as in the bounded-loss attack.

    Args:
        protected: Distilled model (used for the entropy trace)
        x_ref: Binary reference rows
        eval_members: Labeled members
        eval_nonmembers: Labeled non-members

    Returns:
        (AttackReport named "adaptive", per-target DistanceTrace, members first)

    Raises:
        InvalidInputError: On non-binary features or too few samples
    """
    x_ref = np.atleast_2d(np.asarray(x_ref, dtype=np.float64))
    for name, matrix in (("x_ref", x_ref), ("eval members", eval_members.features),
                         ("eval non-members", eval_nonmembers.features)):
        if not is_binary(matrix):
            raise InvalidInputError(f"adaptive distance attack needs binary features; {name} is not binary")

    n = balanced_sizes(eval_members.n_samples, eval_nonmembers.n_samples)
    members = eval_members.subset(np.arange(n))
    nonmembers = eval_nonmembers.subset(np.arange(n))
    targets = np.vstack([members.features, nonmembers.features])
    distances, nearest = nearest_hamming(targets, x_ref)

    report = threshold_attack(distances[:n], distances[n:], "adaptive", kind=AttackFeatureKind.DISTANCE)
    ref_entropies = prediction_entropies(protected, x_ref)
    trace = DistanceTrace(
        min_distance=distances,
        nearest_ref_index=nearest,
        nearest_ref_entropy=ref_entropies[nearest],
        target_entropy=prediction_entropies(protected, targets),
        is_member=np.concatenate([np.ones(n, dtype=bool), np.zeros(n, dtype=bool)]),
    )
    return report, trace
