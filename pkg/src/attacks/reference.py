"""Membership risk of the reference data itself."""

import logging
from typing import Optional, Tuple

import numpy as np

from ..dmp.selection import prediction_entropies
from ..errors import InvalidInputError
from ..models.attack import ReferenceRiskReport
from ..models.dataset import Dataset
from ..models.network import Mlp, TrainConfig
from ..utils.stats import balanced_sizes
from .features import NshMode
from .learned import nsh_attack
from .threshold import MIN_SAMPLES_PER_SIDE, bl_attack


logger = logging.getLogger(__name__)


def matched_reference_split(
    teacher: Mlp,
    pool: Dataset,
    size: int,
    seed: int,
    temperature: float = 1.0,
) -> Tuple[Dataset, Dataset]:
    """Split the lowest-entropy band of a labeled pool into reference members and a matched holdout.

    The 2 * size pool rows with the lowest teacher entropy are shuffled with
    the seed; the first size rows become the reference set and the rest the
    non-member holdout, so both sides are drawn by the same entropy rule.

    Args:
        teacher: Model whose prediction entropy ranks the pool
        pool: Labeled candidate reference rows
        size: Rows per side
        seed: Shuffle seed
        temperature: Softmax temperature of the ranking

    Returns:
        (reference members, non-member holdout)

    Raises:
        InvalidInputError: If the pool holds fewer than 2 * size rows or size is below 4
    """
    if size < MIN_SAMPLES_PER_SIDE:
        raise InvalidInputError(f"reference split needs at least {MIN_SAMPLES_PER_SIDE} rows per side, got {size}")
    if 2 * size > pool.n_samples:
        raise InvalidInputError(f"pool of {pool.n_samples} rows cannot give two sides of {size}")
    entropies = prediction_entropies(teacher, pool.features, temperature)
    band = np.argsort(entropies, kind="stable")[:2 * size]
    band = np.random.default_rng(seed).permutation(band)
    logger.debug(f"Reference band: {band.size} rows, max entropy {entropies[band].max():.4f}")
    return pool.subset(np.sort(band[:size])), pool.subset(np.sort(band[size:]))


def ref_data_mia(
    protected: Mlp,
    x_ref_with_labels: Dataset,
    nonmember_holdout: Dataset,
    attack_config: Optional[TrainConfig] = None,
) -> ReferenceRiskReport:
    """Attack the protected model treating the reference rows as its members.

    Runs the bounded-loss attack and both NSH attacks; for the NSH attacks
    the first half of each side is the adversary's knowledge and the second
    half is evaluated.

    Args:
        protected: Distilled model
        x_ref_with_labels: Reference rows with their ground-truth labels
        nonmember_holdout: Labeled rows neither model trained on
        attack_config: Recipe of the NSH attack networks

    Returns:
        ReferenceRiskReport keyed by bl, nsh_blackbox and nsh_whitebox

    Raises:
        InvalidInputError: On an empty holdout or too few samples
    """
    if nonmember_holdout.n_samples == 0:
        raise InvalidInputError("non-member holdout is empty")
    n = balanced_sizes(x_ref_with_labels.n_samples, nonmember_holdout.n_samples)
    if n < MIN_SAMPLES_PER_SIDE:
        raise InvalidInputError(f"reference attack needs at least {MIN_SAMPLES_PER_SIDE} samples per side")

    members = x_ref_with_labels.subset(np.arange(n))
    nonmembers = nonmember_holdout.subset(np.arange(n))
    half = n // 2
    known = np.arange(half)
    held = np.arange(half, n)

    report = ReferenceRiskReport()
    report.reports["bl"] = bl_attack(protected, members, nonmembers)
    for mode in NshMode:
        report.reports[f"nsh_{mode.value}"] = nsh_attack(
            protected,
            members.subset(known),
            nonmembers.subset(known),
            members.subset(held),
            nonmembers.subset(held),
            mode,
            attack_config,
        )
    logger.info(f"Reference-data risk: max attack accuracy {report.max_accuracy:.4f}")
    return report
